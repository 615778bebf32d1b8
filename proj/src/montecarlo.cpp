#include "satcov/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace satcov {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void sort_by_distance(std::vector<SatellitePoint>& v) {
  std::sort(v.begin(), v.end(),
            [](const SatellitePoint& a, const SatellitePoint& b) {
              return a.distance_km < b.distance_km;
            });
}

double brp(const LinkBudget& b, double distance_km) {
  // biased long-term received power, common path-loss constant dropped
  return b.tx_power_w * b.mainlobe_gain * b.bias * std::pow(distance_km, -b.pathloss_exp);
}

}  // namespace

std::mt19937_64 trial_engine(uint64_t master_seed, uint64_t stream, uint64_t trial) {
  uint64_t s = splitmix64(master_seed);
  s = splitmix64(s ^ stream);
  s = splitmix64(s ^ trial);
  return std::mt19937_64(s);
}

std::vector<SatellitePoint> sample_geo_visible(const ScenarioConfig& cfg, std::mt19937_64& rng) {
  std::vector<SatellitePoint> out;
  if (!(cfg.geo.density > 0.0) || !geo_visible(cfg.terminal, cfg.geom)) return out;
  const double R = cfg.geom.geo_orbit_radius_km();
  const double gvis = geo_visible_halfangle(cfg.terminal, cfg.geom);
  const double mean = cfg.geo.density * 2.0 * R * gvis;
  std::poisson_distribution<long> count(mean);
  const long n = count(rng);
  if (n <= 0) return out;
  out.reserve(static_cast<size_t>(n));
  std::uniform_real_distribution<double> angle(-gvis, gvis);
  for (long i = 0; i < n; ++i) {
    const double gamma = angle(rng);
    const double beta = cfg.terminal.longitude_theta + gamma;
    SatellitePoint p;
    p.type = SatType::geo;
    p.position = {R * std::cos(beta), R * std::sin(beta), 0.0};
    p.distance_km = geo_distance_at_angle(gamma, cfg.terminal, cfg.geom);
    out.push_back(p);
  }
  sort_by_distance(out);
  return out;
}

std::vector<SatellitePoint> sample_leo_visible(const ScenarioConfig& cfg, std::mt19937_64& rng) {
  std::vector<SatellitePoint> out;
  if (!(cfg.leo.density > 0.0)) return out;
  const double R = cfg.geom.leo_shell_radius_km();
  const double re = cfg.geom.earth_radius_km;
  const double mean = cfg.leo.density * 2.0 * kPi * R * cfg.geom.leo_altitude_km;
  std::poisson_distribution<long> count(mean);
  const long n = count(rng);
  if (n <= 0) return out;

  // orthonormal frame with e3 pointing at the terminal; cap sampling is
  // uniform in the cosine of the angle from e3
  const double cp = std::cos(cfg.terminal.latitude_phi);
  const double sp = std::sin(cfg.terminal.latitude_phi);
  const double ct = std::cos(cfg.terminal.longitude_theta);
  const double st = std::sin(cfg.terminal.longitude_theta);
  const std::array<double, 3> e3{cp * ct, cp * st, sp};
  std::array<double, 3> e1{-st, ct, 0.0};
  if (cp < 1e-12) e1 = {1.0, 0.0, 0.0};
  const std::array<double, 3> e2{e3[1] * e1[2] - e3[2] * e1[1],
                                 e3[2] * e1[0] - e3[0] * e1[2],
                                 e3[0] * e1[1] - e3[1] * e1[0]};

  out.reserve(static_cast<size_t>(n));
  std::uniform_real_distribution<double> cosang(re / R, 1.0);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * kPi);
  for (long i = 0; i < n; ++i) {
    const double c = cosang(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double az = azimuth(rng);
    const double ca = std::cos(az), sa = std::sin(az);
    SatellitePoint p;
    p.type = SatType::leo;
    for (int k = 0; k < 3; ++k)
      p.position[k] = R * (c * e3[k] + s * (ca * e1[k] + sa * e2[k]));
    p.distance_km = std::sqrt(std::max(0.0, R * R + re * re - 2.0 * R * re * c));
    out.push_back(p);
  }
  sort_by_distance(out);
  return out;
}

std::optional<SatType> associate(const std::vector<SatellitePoint>& geo_sats,
                                 const std::vector<SatellitePoint>& leo_sats,
                                 const ScenarioConfig& cfg) {
  if (geo_sats.empty() && leo_sats.empty()) return std::nullopt;
  if (leo_sats.empty()) return SatType::geo;
  if (geo_sats.empty()) return SatType::leo;
  const double bg = brp(cfg.geo.budget, geo_sats.front().distance_km);
  const double bl = brp(cfg.leo.budget, leo_sats.front().distance_km);
  return bg >= bl ? SatType::geo : SatType::leo;  // tie picks GEO
}

Snapshot snapshot_sinr(const ScenarioConfig& cfg, std::mt19937_64& rng) {
  Snapshot snap;
  snap.geo_sats = sample_geo_visible(cfg, rng);
  snap.leo_sats = sample_leo_visible(cfg, rng);
  const int m = cfg.channel.nakagami_m;
  snap.geo_fading.reserve(snap.geo_sats.size());
  for (size_t i = 0; i < snap.geo_sats.size(); ++i)
    snap.geo_fading.push_back(sample_channel_gain(m, rng));
  snap.leo_fading.reserve(snap.leo_sats.size());
  for (size_t i = 0; i < snap.leo_sats.size(); ++i)
    snap.leo_fading.push_back(sample_channel_gain(m, rng));

  snap.serving = associate(snap.geo_sats, snap.leo_sats, cfg);
  if (!snap.serving) return snap;

  const double k0 = path_loss_coeff(cfg.channel);
  const bool geo_serves = *snap.serving == SatType::geo;
  const LinkBudget& sb = geo_serves ? cfg.geo.budget : cfg.leo.budget;
  const SatellitePoint& sp = geo_serves ? snap.geo_sats.front() : snap.leo_sats.front();
  const double h0 = geo_serves ? snap.geo_fading.front() : snap.leo_fading.front();
  const double signal =
      sb.tx_power_w * sb.mainlobe_gain * h0 * k0 * std::pow(sp.distance_km, -sb.pathloss_exp);

  double interference = 0.0;
  for (size_t i = 0; i < snap.geo_sats.size(); ++i) {
    if (geo_serves && i == 0) continue;
    const LinkBudget& b = cfg.geo.budget;
    interference += b.tx_power_w * b.interferer_gain * snap.geo_fading[i] * k0 *
                    std::pow(snap.geo_sats[i].distance_km, -b.pathloss_exp);
  }
  for (size_t i = 0; i < snap.leo_sats.size(); ++i) {
    if (!geo_serves && i == 0) continue;
    const LinkBudget& b = cfg.leo.budget;
    interference += b.tx_power_w * b.interferer_gain * snap.leo_fading[i] * k0 *
                    std::pow(snap.leo_sats[i].distance_km, -b.pathloss_exp);
  }
  snap.sinr = signal / (noise_power_w(cfg.channel) + interference);
  return snap;
}

namespace {

struct Counters {
  uint64_t vis_geo = 0, vis_leo = 0, both = 0, any = 0, assoc_geo = 0;
  std::vector<uint64_t> cov_total, cov_geo, cov_leo;

  explicit Counters(size_t ntau)
      : cov_total(ntau, 0), cov_geo(ntau, 0), cov_leo(ntau, 0) {}

  void merge(const Counters& o) {
    vis_geo += o.vis_geo;
    vis_leo += o.vis_leo;
    both += o.both;
    any += o.any;
    assoc_geo += o.assoc_geo;
    for (size_t j = 0; j < cov_total.size(); ++j) {
      cov_total[j] += o.cov_total[j];
      cov_geo[j] += o.cov_geo[j];
      cov_leo[j] += o.cov_leo[j];
    }
  }
};

void run_trials(const ScenarioConfig& cfg, const std::vector<double>& tau_grid,
                uint64_t seed, uint64_t stream, uint64_t lo, uint64_t hi, Counters& c) {
  for (uint64_t t = lo; t < hi; ++t) {
    std::mt19937_64 rng = trial_engine(seed, stream, t);
    const Snapshot snap = snapshot_sinr(cfg, rng);
    const bool vg = !snap.geo_sats.empty();
    const bool vl = !snap.leo_sats.empty();
    if (vg) ++c.vis_geo;
    if (vl) ++c.vis_leo;
    if (vg || vl) ++c.any;
    const bool both = vg && vl;
    if (both) ++c.both;
    const bool geo_serves = snap.serving && *snap.serving == SatType::geo;
    if (both && geo_serves) ++c.assoc_geo;
    if (!snap.sinr) continue;
    for (size_t j = 0; j < tau_grid.size(); ++j) {
      if (*snap.sinr >= tau_grid[j]) {
        ++c.cov_total[j];
        if (both) {
          if (geo_serves)
            ++c.cov_geo[j];
          else
            ++c.cov_leo[j];
        }
      }
    }
  }
}

Counters run_stream(const ScenarioConfig& cfg, const std::vector<double>& tau_grid,
                    uint64_t n, uint64_t seed, uint64_t stream, int workers) {
  Counters total(tau_grid.size());
  if (workers <= 1 || n < 2) {
    run_trials(cfg, tau_grid, seed, stream, 0, n, total);
    return total;
  }
  const int w = std::min<uint64_t>(workers, n);
  std::vector<Counters> parts(w, Counters(tau_grid.size()));
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (int i = 0; i < w; ++i) {
    const uint64_t lo = n * i / w;
    const uint64_t hi = n * (i + 1) / w;
    threads.emplace_back(run_trials, std::cref(cfg), std::cref(tau_grid), seed, stream, lo,
                         hi, std::ref(parts[i]));
  }
  for (auto& th : threads) th.join();
  for (const auto& p : parts) total.merge(p);
  return total;
}

EstimateWithCI make_estimate(uint64_t hits, uint64_t n) {
  EstimateWithCI e;
  e.n_trials = n;
  if (n == 0) return e;
  e.mean = static_cast<double>(hits) / static_cast<double>(n);
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(n));
  return e;
}

}  // namespace

CoverageReport estimate(const ScenarioConfig& cfg, const std::vector<double>& tau_grid,
                        uint64_t n_trials, uint64_t seed, int workers) {
  CoverageReport rep;
  rep.tau_grid = tau_grid;
  rep.n_trials = n_trials;
  rep.seed = seed;

  const Counters hybrid = run_stream(cfg, tau_grid, n_trials, seed, 0, workers);

  ScenarioConfig geo_only = cfg;
  geo_only.leo.density = 0.0;
  const Counters gonly = run_stream(geo_only, tau_grid, n_trials, seed, 1, workers);

  ScenarioConfig leo_only = cfg;
  leo_only.geo.density = 0.0;
  const Counters lonly = run_stream(leo_only, tau_grid, n_trials, seed, 2, workers);

  rep.p_vis_geo = make_estimate(hybrid.vis_geo, n_trials);
  rep.p_vis_leo = make_estimate(hybrid.vis_leo, n_trials);
  rep.p_assc_geo = make_estimate(hybrid.assoc_geo, hybrid.both);
  rep.p_assc_leo = make_estimate(hybrid.both - hybrid.assoc_geo, hybrid.both);

  const size_t ntau = tau_grid.size();
  rep.p_cov_geo.reserve(ntau);
  rep.p_cov_leo.reserve(ntau);
  rep.p_cov_geo_nocross.reserve(ntau);
  rep.p_cov_leo_nocross.reserve(ntau);
  rep.p_cov_total.reserve(ntau);
  rep.p_cov_given_visible.reserve(ntau);
  for (size_t j = 0; j < ntau; ++j) {
    rep.p_cov_geo.push_back(make_estimate(hybrid.cov_geo[j], hybrid.assoc_geo));
    rep.p_cov_leo.push_back(make_estimate(hybrid.cov_leo[j], hybrid.both - hybrid.assoc_geo));
    rep.p_cov_geo_nocross.push_back(make_estimate(gonly.cov_total[j], gonly.vis_geo));
    rep.p_cov_leo_nocross.push_back(make_estimate(lonly.cov_total[j], lonly.vis_leo));
    rep.p_cov_total.push_back(make_estimate(hybrid.cov_total[j], n_trials));
    rep.p_cov_given_visible.push_back(make_estimate(hybrid.cov_total[j], hybrid.any));
  }
  return rep;
}

std::vector<double> estimate_laplace(const ScenarioConfig& cfg, SatType type,
                                     const std::vector<double>& s_values, double r0_km,
                                     uint64_t n, uint64_t seed) {
  const uint64_t stream = type == SatType::geo ? 100 : 101;
  const SatParams& sp = type == SatType::geo ? cfg.geo : cfg.leo;
  const double k0 = path_loss_coeff(cfg.channel);
  const int m = cfg.channel.nakagami_m;
  std::vector<double> acc(s_values.size(), 0.0);
  for (uint64_t t = 0; t < n; ++t) {
    std::mt19937_64 rng = trial_engine(seed, stream, t);
    const std::vector<SatellitePoint> sats = type == SatType::geo
                                                 ? sample_geo_visible(cfg, rng)
                                                 : sample_leo_visible(cfg, rng);
    double interference = 0.0;
    for (const SatellitePoint& p : sats) {
      const double h = sample_channel_gain(m, rng);
      if (p.distance_km <= r0_km) continue;
      interference += sp.budget.tx_power_w * sp.budget.interferer_gain * h * k0 *
                      std::pow(p.distance_km, -sp.budget.pathloss_exp);
    }
    for (size_t k = 0; k < s_values.size(); ++k)
      acc[k] += std::exp(-s_values[k] * interference);
  }
  for (double& v : acc) v /= static_cast<double>(n);
  return acc;
}

}  // namespace satcov
