#include "satcov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace satcov {

std::array<double, 3> terminal_position(const TerminalLocation& loc, const OrbitGeometry& geom) {
  const double cp = std::cos(loc.latitude_phi);
  const double sp = std::sin(loc.latitude_phi);
  const double ct = std::cos(loc.longitude_theta);
  const double st = std::sin(loc.longitude_theta);
  return {geom.earth_radius_km * cp * ct, geom.earth_radius_km * cp * st,
          geom.earth_radius_km * sp};
}

double inv_latitude(const OrbitGeometry& geom) {
  return std::acos(geom.earth_radius_km / geom.geo_orbit_radius_km());
}

bool geo_visible(const TerminalLocation& loc, const OrbitGeometry& geom) {
  return std::fabs(loc.latitude_phi) < inv_latitude(geom) - kPolarGuardRad;
}

double geo_visible_halfangle(const TerminalLocation& loc, const OrbitGeometry& geom) {
  if (!geo_visible(loc, geom)) return 0.0;
  const double arg =
      geom.earth_radius_km / (geom.geo_orbit_radius_km() * std::cos(loc.latitude_phi));
  return std::acos(std::clamp(arg, -1.0, 1.0));
}

double geo_distance_at_angle(double gamma, const TerminalLocation& loc,
                             const OrbitGeometry& geom) {
  const double R = geom.geo_orbit_radius_km();
  const double re = geom.earth_radius_km;
  const double c = std::cos(loc.latitude_phi) * std::cos(gamma);
  return std::sqrt(std::max(0.0, R * R + re * re - 2.0 * R * re * c));
}

double geo_angle_at_distance(double r_km, const TerminalLocation& loc,
                             const OrbitGeometry& geom) {
  const double R = geom.geo_orbit_radius_km();
  const double re = geom.earth_radius_km;
  const double cp = std::cos(loc.latitude_phi);
  if (cp <= 0.0) throw std::domain_error("no orbit-angle map at polar latitude");
  const double arg = (R * R + re * re - r_km * r_km) / (2.0 * R * re * cp);
  return std::acos(std::clamp(arg, -1.0, 1.0));
}

std::optional<DistanceBounds> geo_distance_bounds(const TerminalLocation& loc,
                                                  const OrbitGeometry& geom) {
  if (!geo_visible(loc, geom)) return std::nullopt;
  const double a = geom.geo_altitude_km;
  const double re = geom.earth_radius_km;
  return DistanceBounds{geo_distance_at_angle(0.0, loc, geom),
                        std::sqrt(a * a + 2.0 * a * re)};
}

DistanceBounds leo_distance_bounds(const OrbitGeometry& geom) {
  const double a = geom.leo_altitude_km;
  const double re = geom.earth_radius_km;
  return {a, std::sqrt(a * a + 2.0 * a * re)};
}

double geo_arc_measure_derivative(double r_km, const TerminalLocation& loc,
                                  const OrbitGeometry& geom) {
  const double R = geom.geo_orbit_radius_km();
  const double re = geom.earth_radius_km;
  const double cp = std::cos(loc.latitude_phi);
  // 4R^2 re^2 cos^2(phi) - (R^2 + re^2 - r^2)^2 in factored form; the raw
  // difference cancels catastrophically near the support endpoints
  const double near2 = R * R + re * re - 2.0 * R * re * cp;
  const double far2 = R * R + re * re + 2.0 * R * re * cp;
  const double radicand = (r_km * r_km - near2) * (far2 - r_km * r_km);
  // above the horizon distance the orbit continues but is no longer visible
  const double a = geom.geo_altitude_km;
  if (!(radicand > 0.0) || r_km > std::sqrt(a * a + 2.0 * a * re))
    throw std::domain_error("distance outside the orbit support");
  return 4.0 * r_km * R / std::sqrt(radicand);
}

double leo_cap_measure_derivative(double r_km, const OrbitGeometry& geom) {
  const double R = geom.leo_shell_radius_km();
  const double re = geom.earth_radius_km;
  const double a = geom.leo_altitude_km;
  if (!(r_km > a) || r_km > std::sqrt(a * a + 2.0 * a * re))
    throw std::domain_error("distance outside the shell support");
  return 2.0 * kPi * r_km * R / re;
}

}  // namespace satcov
