#pragma once

#include <optional>
#include <string>
#include <vector>

#include "satcov/analytic.hpp"
#include "satcov/config.hpp"

namespace satcov {

// the nine reported probabilities, in column order
inline constexpr const char* kQuantityNames[9] = {
    "p_vis_geo",  "p_vis_leo",  "p_assc_geo",        "p_assc_leo",        "p_cov_geo",
    "p_cov_leo",  "p_cov_geo_nocross", "p_cov_leo_nocross", "p_cov_total"};

struct SweepRow {
  Scenario scenario = Scenario::hybrid;
  double value = 0.0;
  std::string status = "ok";  // "ok" or a sanitized failure message
  double ana[9] = {};
  double mc[9] = {};
  double se[9] = {};
  double z[9] = {};
  double z_max = 0.0;
  long n_trials = 0;
  double runtime_ms = 0.0;
};

struct SweepOptions {
  std::uint64_t seed = 12345;
  long trials = 100000;
  int workers = 1;
  std::optional<std::vector<Scenario>> scenarios;  // overrides the config list
  std::optional<double> z_threshold;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  bool z_gate_failed = false;
};

SweepResult run_sweep(const RunConfig& rc, const SweepOptions& opt);

std::string sweep_csv(const SweepResult& res);

// writes <out_base>.csv, <out_base>.dat (gnuplot blocks), <out_base>.manifest
void emit_plotdata(const SweepResult& res, const RunConfig& rc, const SweepOptions& opt,
                   const std::string& out_base);

}  // namespace satcov
