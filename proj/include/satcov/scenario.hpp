#pragma once

#include "satcov/channel.hpp"
#include "satcov/geometry.hpp"
#include "satcov/quadrature.hpp"

namespace satcov {

struct SatParams {
  LinkBudget budget;
  // GEO: satellites per km of orbit circle. LEO: satellites per km^2 of shell.
  double density = 0.0;
};

struct ScenarioConfig {
  OrbitGeometry geom;
  TerminalLocation terminal;
  SatParams geo;
  SatParams leo;
  ChannelParams channel;
  QuadratureSpec quad;
  double tau = 1.0;  // SINR coverage threshold, linear

  double geo_count() const { return geo.density * 2.0 * kPi * geom.geo_orbit_radius_km(); }
  double leo_count() const {
    const double R = geom.leo_shell_radius_km();
    return leo.density * 4.0 * kPi * R * R;
  }
  void set_geo_count(double n) { geo.density = n / (2.0 * kPi * geom.geo_orbit_radius_km()); }
  void set_leo_count(double n) {
    const double R = geom.leo_shell_radius_km();
    leo.density = n / (4.0 * kPi * R * R);
  }
};

// Throws std::invalid_argument naming the offending field when any structural
// invariant is violated (used at config parse and before long runs).
void validate_scenario(const ScenarioConfig& cfg);

}  // namespace satcov
