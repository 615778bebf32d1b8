#pragma once

#include "satcov/scenario.hpp"

namespace satcov {

enum class SatType { geo, leo };

// All fields of the total-coverage decomposition. Association and per-type
// coverage fields are conditioned on both constellations being visible; the
// nocross fields condition on only the named type being visible. When a type
// cannot serve at all (zero density, or GEO above the vanishing latitude) the
// association pair collapses to the other type and the dead branch reports 0.
struct CoverageBreakdown {
  double p_vis_geo = 0.0;
  double p_vis_leo = 0.0;
  double p_assc_geo = 0.0;
  double p_assc_leo = 0.0;
  double p_cov_geo = 0.0;
  double p_cov_leo = 0.0;
  double p_cov_geo_nocross = 0.0;
  double p_cov_leo_nocross = 0.0;
  double p_cov_total = 0.0;
};

// Probability of at least one satellite of the type above the horizon.
double p_vis_geo(const ScenarioConfig& cfg);
double p_vis_leo(const ScenarioConfig& cfg);

// Nearest-visible-satellite distance law, conditioned on nonempty visibility.
// CDFs are 0 at the minimum distance and 1 at the visibility maximum; PDFs are
// the closed-form derivatives (the GEO one diverges integrably at the minimum
// distance). Throws std::domain_error outside the support or when the type
// cannot be visible.
double cdf_r0_geo(double r_km, const ScenarioConfig& cfg);
double pdf_r0_geo(double r_km, const ScenarioConfig& cfg);
double cdf_r0_leo(double r_km, const ScenarioConfig& cfg);
double pdf_r0_leo(double r_km, const ScenarioConfig& cfg);

// Distance at which a satellite of type `toward` delivers the same biased
// long-term received power as the other type does from distance r.
double biased_distance(double r_km, SatType toward, const ScenarioConfig& cfg);

// Probability the biased-received-power rule picks each type, conditioned on
// both types having at least one visible satellite.
double p_assc_geo(const ScenarioConfig& cfg);
double p_assc_leo(const ScenarioConfig& cfg);

// Laplace transform E[exp(-s I)] of the aggregate interference from visible
// satellites of one type farther than r0 (exclusion radius clamped into the
// visibility support). Uniform interferer gain, unit-mean fading.
double laplace_interference_geo(double s, double r0_km, const ScenarioConfig& cfg);
double laplace_interference_leo(double s, double r0_km, const ScenarioConfig& cfg);

// Coverage probability P[SINR >= tau] conditioned on association with the
// named type while both types are visible (cross-type interference included),
// and the variants with only the named constellation present.
double p_cov_geo(double tau, const ScenarioConfig& cfg);
double p_cov_leo(double tau, const ScenarioConfig& cfg);
double p_cov_nocross_geo(double tau, const ScenarioConfig& cfg);
double p_cov_nocross_leo(double tau, const ScenarioConfig& cfg);

// Total coverage probability assembled over the visibility cases; the
// both-invisible case contributes zero.
CoverageBreakdown p_cov_total(double tau, const ScenarioConfig& cfg);

}  // namespace satcov
