#pragma once

#include <array>
#include <optional>

namespace satcov {

// Propagation speed in km/s. Kept at exactly 3e5 so the link budget is
// consistent with distances carried in kilometers everywhere.
inline constexpr double kSpeedOfLightKmS = 3.0e5;
inline constexpr double kPi = 3.14159265358979323846;

// Latitudes within this margin of the vanishing latitude are treated as
// having no visible GEO arc: the arc length is zero to first order and the
// distance map is numerically ill-conditioned there.
inline constexpr double kPolarGuardRad = 1e-9;

struct TerminalLocation {
  double latitude_phi = 0.0;    // radians, |phi| <= pi/2
  double longitude_theta = 0.0; // radians, [0, 2*pi)
};

struct OrbitGeometry {
  double earth_radius_km = 6378.0;
  double geo_altitude_km = 35786.0;
  double leo_altitude_km = 600.0;

  double geo_orbit_radius_km() const { return earth_radius_km + geo_altitude_km; }
  double leo_shell_radius_km() const { return earth_radius_km + leo_altitude_km; }
};

struct DistanceBounds {
  double r_min_km = 0.0;
  double r_vis_max_km = 0.0;
};

// Cartesian terminal position on the Earth sphere; norm equals the Earth radius.
std::array<double, 3> terminal_position(const TerminalLocation& loc, const OrbitGeometry& geom);

// Latitude above which no point of the equatorial orbit clears the horizon.
double inv_latitude(const OrbitGeometry& geom);

// True when the terminal sees a nonempty arc of the equatorial orbit.
bool geo_visible(const TerminalLocation& loc, const OrbitGeometry& geom);

// Half-angle (orbit longitude offset from the sub-terminal meridian) of the
// visible arc; zero when the orbit is below the horizon.
double geo_visible_halfangle(const TerminalLocation& loc, const OrbitGeometry& geom);

// Terminal-to-satellite distance for an orbit point at longitude offset gamma
// from the terminal meridian, and its inverse on gamma in [0, pi].
double geo_distance_at_angle(double gamma, const TerminalLocation& loc, const OrbitGeometry& geom);
double geo_angle_at_distance(double r_km, const TerminalLocation& loc, const OrbitGeometry& geom);

// Nearest/farthest distance to the visible arc; empty when below horizon.
std::optional<DistanceBounds> geo_distance_bounds(const TerminalLocation& loc,
                                                  const OrbitGeometry& geom);

// Nearest/farthest distance to the visible spherical cap; latitude independent.
DistanceBounds leo_distance_bounds(const OrbitGeometry& geom);

// d/dr of the arc length of orbit within distance r of the terminal. Diverges
// like an inverse square root at the support endpoints; throws
// std::domain_error outside the open support.
double geo_arc_measure_derivative(double r_km, const TerminalLocation& loc,
                                  const OrbitGeometry& geom);

// d/dr of the shell-cap area within distance r of the terminal.
double leo_cap_measure_derivative(double r_km, const OrbitGeometry& geom);

}  // namespace satcov
