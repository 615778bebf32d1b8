#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "satcov/analytic.hpp"
#include "satcov/scenario.hpp"

namespace satcov {

struct SatellitePoint {
  SatType type = SatType::geo;
  std::array<double, 3> position{};  // km, Earth-centered
  double distance_km = 0.0;          // to the terminal
};

// One network realization. Lists are sorted by distance, so index 0 is the
// association candidate of each type; fading entries align with the lists.
struct Snapshot {
  std::vector<SatellitePoint> geo_sats;
  std::vector<SatellitePoint> leo_sats;
  std::vector<double> geo_fading;
  std::vector<double> leo_fading;
  std::optional<SatType> serving;
  std::optional<double> sinr;  // linear; absent when nothing is visible
};

struct EstimateWithCI {
  double mean = 0.0;
  double std_error = 0.0;  // Bernoulli standard error at the conditional count
  uint64_t n_trials = 0;   // denominator actually used (conditional estimates)
};

struct CoverageReport {
  std::vector<double> tau_grid;
  EstimateWithCI p_vis_geo, p_vis_leo;
  EstimateWithCI p_assc_geo, p_assc_leo;  // conditioned on both types visible
  // conditioned on association with the type (and both visible), per tau
  std::vector<EstimateWithCI> p_cov_geo, p_cov_leo;
  // single-constellation sub-simulations, conditioned on that type visible
  std::vector<EstimateWithCI> p_cov_geo_nocross, p_cov_leo_nocross;
  std::vector<EstimateWithCI> p_cov_total;          // unconditional
  std::vector<EstimateWithCI> p_cov_given_visible;  // conditioned on any visible
  uint64_t n_trials = 0;
  uint64_t seed = 0;
};

// Every trial gets its own engine derived from (master seed, stream, trial
// index), so estimates are reproducible and independent of worker count and
// execution order.
std::mt19937_64 trial_engine(uint64_t master_seed, uint64_t stream, uint64_t trial);

// Poisson samples of the visible part of each constellation, sorted by
// distance. Empty above the vanishing latitude (GEO) or at zero density.
std::vector<SatellitePoint> sample_geo_visible(const ScenarioConfig& cfg, std::mt19937_64& rng);
std::vector<SatellitePoint> sample_leo_visible(const ScenarioConfig& cfg, std::mt19937_64& rng);

// Biased-received-power rule over the nearest candidate of each type; a tie
// picks GEO. Association ignores fading (long-term average power).
std::optional<SatType> associate(const std::vector<SatellitePoint>& geo_sats,
                                 const std::vector<SatellitePoint>& leo_sats,
                                 const ScenarioConfig& cfg);

// Full realization: constellations, fading, association, SINR. The serving
// satellite transmits with its mainlobe gain; every other visible satellite
// of either type interferes with its misaligned-beam gain.
Snapshot snapshot_sinr(const ScenarioConfig& cfg, std::mt19937_64& rng);

// Runs the hybrid scenario plus the two single-constellation scenarios on
// separate seed streams and aggregates all report quantities.
CoverageReport estimate(const ScenarioConfig& cfg, const std::vector<double>& tau_grid,
                        uint64_t n_trials, uint64_t seed, int workers = 1);

// Empirical E[exp(-s I)] of one constellation's interference beyond r0, one
// value per entry of s_values, sharing the constellation draws across them.
std::vector<double> estimate_laplace(const ScenarioConfig& cfg, SatType type,
                                     const std::vector<double>& s_values, double r0_km,
                                     uint64_t n, uint64_t seed);

}  // namespace satcov
