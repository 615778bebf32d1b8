#include "satcov/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "satcov/montecarlo.hpp"

namespace satcov {

namespace {

std::string sanitize(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void apply_variable(ScenarioConfig& cfg, SweepVariable var, double v) {
  switch (var) {
    case SweepVariable::tau_db:
      cfg.tau = std::pow(10.0, v / 10.0);
      break;
    case SweepVariable::latitude_deg:
      cfg.terminal.latitude_phi = v * kPi / 180.0;
      break;
    case SweepVariable::bias_ratio_db:
      cfg.geo.budget.bias = std::pow(10.0, v / 10.0);
      cfg.leo.budget.bias = 1.0;
      break;
    case SweepVariable::leo_count:
      cfg.set_leo_count(v);
      break;
    case SweepVariable::geo_count:
      cfg.set_geo_count(v);
      break;
    case SweepVariable::pathloss_ratio:
      cfg.geo.budget.pathloss_exp = v * cfg.leo.budget.pathloss_exp;
      break;
  }
}

// scenario restriction wins over a count set by the swept variable
void apply_scenario(ScenarioConfig& cfg, Scenario s) {
  if (s == Scenario::geo_only) cfg.leo.density = 0.0;
  if (s == Scenario::leo_only) cfg.geo.density = 0.0;
}

void to_array(const CoverageBreakdown& b, double out[9]) {
  out[0] = b.p_vis_geo;
  out[1] = b.p_vis_leo;
  out[2] = b.p_assc_geo;
  out[3] = b.p_assc_leo;
  out[4] = b.p_cov_geo;
  out[5] = b.p_cov_leo;
  out[6] = b.p_cov_geo_nocross;
  out[7] = b.p_cov_leo_nocross;
  out[8] = b.p_cov_total;
}

void pick_estimates(const CoverageReport& rep, size_t ti, EstimateWithCI out[9]) {
  out[0] = rep.p_vis_geo;
  out[1] = rep.p_vis_leo;
  out[2] = rep.p_assc_geo;
  out[3] = rep.p_assc_leo;
  out[4] = rep.p_cov_geo[ti];
  out[5] = rep.p_cov_leo[ti];
  out[6] = rep.p_cov_geo_nocross[ti];
  out[7] = rep.p_cov_leo_nocross[ti];
  out[8] = rep.p_cov_total[ti];
}

// no conditioning events means no evidence of disagreement; with an all-zero or
// all-one sample the Wald error degenerates, so score against the error the
// closed form itself implies
double zscore(double ana, const EstimateWithCI& e) {
  if (e.n_trials == 0) return 0.0;
  const double diff = std::fabs(ana - e.mean);
  double se = e.std_error;
  if (se == 0.0)
    se = std::sqrt(std::max(0.0, ana * (1.0 - ana)) / static_cast<double>(e.n_trials));
  if (se == 0.0) return diff < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / se;
}

uint64_t point_seed(uint64_t base, size_t scenario_idx, size_t point_idx) {
  return base + 0x9E3779B97F4A7C15ULL *
                    static_cast<uint64_t>(scenario_idx * 4096 + point_idx + 1);
}

}  // namespace

SweepResult run_sweep(const RunConfig& rc, const SweepOptions& opt) {
  SweepResult res;
  res.spec = rc.sweep;
  if (opt.scenarios) res.spec.scenarios = *opt.scenarios;
  if (opt.z_threshold) res.spec.z_threshold = *opt.z_threshold;
  const SweepSpec& sw = res.spec;
  const bool wants_mc = sw.mode != SweepMode::analytic;
  const bool wants_ana = sw.mode != SweepMode::montecarlo;

  for (size_t si = 0; si < sw.scenarios.size(); ++si) {
    const Scenario sc = sw.scenarios[si];

    // a tau sweep reuses one set of snapshots across all thresholds
    std::optional<CoverageReport> shared;
    std::string shared_err;
    if (wants_mc && sw.variable == SweepVariable::tau_db) {
      try {
        ScenarioConfig cfg = rc.scenario;
        apply_scenario(cfg, sc);
        validate_scenario(cfg);
        std::vector<double> taus;
        taus.reserve(sw.grid.size());
        for (double v : sw.grid) taus.push_back(std::pow(10.0, v / 10.0));
        shared = estimate(cfg, taus, static_cast<uint64_t>(opt.trials),
                          point_seed(opt.seed, si, 0), opt.workers);
      } catch (const std::exception& e) {
        shared_err = e.what();
      }
    }

    for (size_t pi = 0; pi < sw.grid.size(); ++pi) {
      SweepRow row;
      row.scenario = sc;
      row.value = sw.grid[pi];
      const auto t0 = std::chrono::steady_clock::now();
      try {
        ScenarioConfig cfg = rc.scenario;
        apply_variable(cfg, sw.variable, row.value);
        apply_scenario(cfg, sc);
        validate_scenario(cfg);

        if (wants_ana) {
          const CoverageBreakdown b = p_cov_total(cfg.tau, cfg);
          to_array(b, row.ana);
        }
        if (wants_mc) {
          EstimateWithCI est[9];
          if (sw.variable == SweepVariable::tau_db) {
            if (!shared) throw std::runtime_error(shared_err);
            pick_estimates(*shared, pi, est);
          } else {
            const CoverageReport rep =
                estimate(cfg, {cfg.tau}, static_cast<uint64_t>(opt.trials),
                         point_seed(opt.seed, si, pi), opt.workers);
            pick_estimates(rep, 0, est);
          }
          row.n_trials = opt.trials;
          for (int q = 0; q < 9; ++q) {
            row.mc[q] = est[q].mean;
            row.se[q] = est[q].std_error;
          }
          if (sw.mode == SweepMode::validate) {
            for (int q = 0; q < 9; ++q) {
              row.z[q] = zscore(row.ana[q], est[q]);
              row.z_max = std::max(row.z_max, row.z[q]);
            }
            if (row.z_max > sw.z_threshold) res.z_gate_failed = true;
          }
        }
      } catch (const std::exception& e) {
        row.status = sanitize(e.what());
      }
      row.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
      res.rows.push_back(std::move(row));
    }
  }
  return res;
}

std::string sweep_csv(const SweepResult& res) {
  const SweepMode mode = res.spec.mode;
  std::ostringstream out;
  out << "scenario,variable,value,status";
  if (mode == SweepMode::analytic) {
    for (const char* q : kQuantityNames) out << ',' << q;
  } else if (mode == SweepMode::montecarlo) {
    for (const char* q : kQuantityNames) out << ",mc_" << q;
    for (const char* q : kQuantityNames) out << ",se_" << q;
    out << ",n_trials";
  } else {
    for (const char* q : kQuantityNames) out << ",ana_" << q;
    for (const char* q : kQuantityNames) out << ",mc_" << q;
    for (const char* q : kQuantityNames) out << ",se_" << q;
    for (const char* q : kQuantityNames) out << ",z_" << q;
    out << ",z_max,n_trials";
  }
  out << '\n';

  const char* var = to_string(res.spec.variable);
  for (const SweepRow& r : res.rows) {
    out << to_string(r.scenario) << ',' << var << ',' << fmt(r.value) << ',' << r.status;
    if (mode == SweepMode::analytic) {
      for (double v : r.ana) out << ',' << fmt(v);
    } else if (mode == SweepMode::montecarlo) {
      for (double v : r.mc) out << ',' << fmt(v);
      for (double v : r.se) out << ',' << fmt(v);
      out << ',' << r.n_trials;
    } else {
      for (double v : r.ana) out << ',' << fmt(v);
      for (double v : r.mc) out << ',' << fmt(v);
      for (double v : r.se) out << ',' << fmt(v);
      for (double v : r.z) out << ',' << fmt(v);
      out << ',' << fmt(r.z_max) << ',' << r.n_trials;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

void emit_plotdata(const SweepResult& res, const RunConfig& rc, const SweepOptions& opt,
                   const std::string& out_base) {
  write_file(out_base + ".csv", sweep_csv(res));

  const SweepMode mode = res.spec.mode;
  const char* var = to_string(res.spec.variable);
  std::ostringstream dat;
  dat << "# " << var << " sweep, " << to_string(mode) << " mode\n";
  dat << "# one block per scenario, separated by two blank lines (gnuplot index)\n";
  bool first = true;
  for (Scenario sc : res.spec.scenarios) {
    if (!first) dat << "\n\n";
    first = false;
    dat << "# scenario: " << to_string(sc) << "\n";
    dat << "# columns: " << var;
    if (mode != SweepMode::montecarlo)
      for (const char* q : kQuantityNames) dat << ' ' << q;
    if (mode != SweepMode::analytic)
      for (const char* q : kQuantityNames) dat << ' ' << "mc_" << q;
    dat << "\n";
    for (const SweepRow& r : res.rows) {
      if (r.scenario != sc || r.status != "ok") continue;
      dat << fmt(r.value);
      if (mode != SweepMode::montecarlo)
        for (double v : r.ana) dat << ' ' << fmt(v);
      if (mode != SweepMode::analytic)
        for (double v : r.mc) dat << ' ' << fmt(v);
      dat << "\n";
    }
  }
  write_file(out_base + ".dat", dat.str());

  std::ostringstream man;
  man << "[run]\n";
  man << "tool_version = 0.1.0\n";
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  man << "timestamp = " << stamp << "\n";
  man << "mode = " << to_string(mode) << "\n";
  man << "variable = " << var << "\n";
  man << "seed = " << opt.seed << "\n";
  man << "trials = " << opt.trials << "\n";
  man << "workers = " << opt.workers << "\n";
  man << "z_threshold = " << fmt(res.spec.z_threshold) << "\n";
  man << "\n[config]\n" << emit_config(rc);
  man << "\n[runtime]\n";
  for (size_t i = 0; i < res.rows.size(); ++i) {
    const SweepRow& r = res.rows[i];
    man << "row_" << i << "_ms = " << fmt(r.runtime_ms) << "  # " << to_string(r.scenario)
        << " " << var << "=" << fmt(r.value) << "\n";
  }
  write_file(out_base + ".manifest", man.str());
}

}  // namespace satcov
