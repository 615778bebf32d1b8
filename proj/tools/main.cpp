#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "satcov/sweep.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string scenarios;
  std::uint64_t seed = 12345;
  long trials = 100000;
  int workers = 1;
  double z_threshold = std::nan("");
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "config file; omit for built-in defaults");
  cmd->add_option("--out", o.out,
                  "output base path; writes <out>.csv, <out>.dat and <out>.manifest");
  cmd->add_option("--scenarios", o.scenarios,
                  "comma list of hybrid, geo_only, leo_only; overrides the config");
  cmd->add_option("--seed", o.seed, "master RNG seed for simulation runs");
  cmd->add_option("--trials", o.trials, "simulation trials per point")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", o.workers, "simulation worker threads")
      ->check(CLI::Range(1, 256));
  cmd->add_option("--z-threshold", o.z_threshold,
                  "validation gate on |analytic - simulated| in standard errors");
}

void print_summary(std::ostream& os, const satcov::SweepResult& res) {
  size_t failed = 0;
  double worst_z = 0.0;
  for (const auto& r : res.rows) {
    if (r.status != "ok") ++failed;
    worst_z = std::max(worst_z, r.z_max);
  }
  os << res.rows.size() << " rows (" << failed << " failed), mode "
     << satcov::to_string(res.spec.mode) << ", variable "
     << satcov::to_string(res.spec.variable) << "\n";
  if (res.spec.mode == satcov::SweepMode::validate)
    os << "max z " << worst_z << " against threshold " << res.spec.z_threshold
       << (res.z_gate_failed ? " (GATE FAILED)" : " (gate passed)") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverage analysis for hybrid GEO/LEO satellite downlinks"};
  app.require_subcommand(1);
  Options o;
  CLI::App* cmd_ana = app.add_subcommand("analytic", "closed-form probabilities on a grid");
  CLI::App* cmd_mc = app.add_subcommand("montecarlo", "simulated probabilities on a grid");
  CLI::App* cmd_val =
      app.add_subcommand("validate", "closed forms against simulation with a z gate");
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "run in whatever mode the config picks");
  for (CLI::App* c : {cmd_ana, cmd_mc, cmd_val, cmd_sweep}) add_common(c, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help lands here too and must keep exit status 0
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    satcov::RunConfig rc =
        o.config.empty() ? satcov::default_run_config() : satcov::parse_config(o.config);
    if (cmd_ana->parsed()) rc.sweep.mode = satcov::SweepMode::analytic;
    if (cmd_mc->parsed()) rc.sweep.mode = satcov::SweepMode::montecarlo;
    if (cmd_val->parsed()) rc.sweep.mode = satcov::SweepMode::validate;

    satcov::SweepOptions sopt;
    sopt.seed = o.seed;
    sopt.trials = o.trials;
    sopt.workers = o.workers;
    if (!o.scenarios.empty()) sopt.scenarios = satcov::scenarios_from_string(o.scenarios);
    if (!std::isnan(o.z_threshold)) {
      if (!(o.z_threshold > 0.0))
        throw std::invalid_argument("--z-threshold must be > 0");
      sopt.z_threshold = o.z_threshold;
    }

    const satcov::SweepResult res = satcov::run_sweep(rc, sopt);

    if (!o.out.empty()) {
      satcov::emit_plotdata(res, rc, sopt, o.out);
      std::cout << "wrote " << o.out << ".csv, " << o.out << ".dat, " << o.out
                << ".manifest\n";
      print_summary(std::cout, res);
    } else {
      std::cout << satcov::sweep_csv(res);
      print_summary(std::cerr, res);
    }

    if (rc.sweep.mode == satcov::SweepMode::validate && res.z_gate_failed) return 2;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
