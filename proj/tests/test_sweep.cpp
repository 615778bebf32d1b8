#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "satcov/sweep.hpp"

using namespace satcov;

namespace {

RunConfig small_run() {
  RunConfig rc = default_run_config();
  rc.scenario.set_geo_count(50.0);
  return rc;
}

std::string first_line(const std::string& s) {
  return s.substr(0, s.find('\n'));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("csv headers name every column per mode") {
  RunConfig rc = default_run_config();
  rc.sweep.grid = {0.0};
  SweepOptions opt;
  opt.trials = 20;

  rc.sweep.mode = SweepMode::analytic;
  CHECK(first_line(sweep_csv(run_sweep(rc, opt))) ==
        "scenario,variable,value,status,p_vis_geo,p_vis_leo,p_assc_geo,p_assc_leo,"
        "p_cov_geo,p_cov_leo,p_cov_geo_nocross,p_cov_leo_nocross,p_cov_total");

  rc.scenario.set_geo_count(5.0);  // keep the sampled runs cheap
  rc.sweep.mode = SweepMode::montecarlo;
  CHECK(first_line(sweep_csv(run_sweep(rc, opt))) ==
        "scenario,variable,value,status,mc_p_vis_geo,mc_p_vis_leo,mc_p_assc_geo,"
        "mc_p_assc_leo,mc_p_cov_geo,mc_p_cov_leo,mc_p_cov_geo_nocross,"
        "mc_p_cov_leo_nocross,mc_p_cov_total,se_p_vis_geo,se_p_vis_leo,se_p_assc_geo,"
        "se_p_assc_leo,se_p_cov_geo,se_p_cov_leo,se_p_cov_geo_nocross,"
        "se_p_cov_leo_nocross,se_p_cov_total,n_trials");

  rc.sweep.mode = SweepMode::validate;
  const std::string vh = first_line(sweep_csv(run_sweep(rc, opt)));
  CHECK(vh.substr(0, 40) == "scenario,variable,value,status,ana_p_vis");
  CHECK(vh.find(",mc_p_cov_total,") != std::string::npos);
  CHECK(vh.find(",z_p_cov_total,") != std::string::npos);
  CHECK(vh.find(",z_max,n_trials") != std::string::npos);
  CHECK(split_csv(vh).size() == 4 + 4 * 9 + 2);
}

TEST_CASE("scenario restriction beats the swept count") {
  RunConfig rc = small_run();
  rc.sweep.variable = SweepVariable::leo_count;
  rc.sweep.grid = {0.0, 100.0, 400.0};
  rc.sweep.scenarios = {Scenario::hybrid, Scenario::geo_only};
  const SweepResult res = run_sweep(rc, SweepOptions{});
  REQUIRE(res.rows.size() == 6);

  // hybrid at zero shell density degenerates to the belt alone
  const SweepRow& r0 = res.rows[0];
  CHECK(r0.status == "ok");
  CHECK(r0.ana[1] == 0.0);  // p_vis_leo
  CHECK(r0.ana[2] == 1.0);  // p_assc_geo
  CHECK(r0.ana[3] == 0.0);
  CHECK(r0.ana[8] == doctest::Approx(r0.ana[0] * r0.ana[6]).epsilon(1e-12));

  // denser shell, busier sky
  CHECK(res.rows[2].ana[1] > res.rows[1].ana[1]);

  // the geo_only baseline ignores the swept shell count entirely
  for (size_t i = 4; i < 6; ++i)
    for (int q = 0; q < 9; ++q) CHECK(res.rows[i].ana[q] == res.rows[3].ana[q]);
  CHECK(res.rows[3].ana[1] == 0.0);
}

TEST_CASE("latitude sweep crosses the belt visibility edge") {
  RunConfig rc = small_run();
  rc.sweep.variable = SweepVariable::latitude_deg;
  rc.sweep.grid = {0.0, 60.0, 82.0, 95.0};
  const SweepResult res = run_sweep(rc, SweepOptions{});
  REQUIRE(res.rows.size() == 4);

  CHECK(res.rows[0].ana[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.rows[1].ana[0] == doctest::Approx(1.0).epsilon(1e-9));

  // beyond the vanishing latitude only the shell remains
  const SweepRow& edge = res.rows[2];
  CHECK(edge.status == "ok");
  CHECK(edge.ana[0] == 0.0);
  CHECK(edge.ana[3] == 1.0);
  CHECK(edge.ana[8] == doctest::Approx(edge.ana[1] * edge.ana[7]).epsilon(1e-12));

  // an impossible point fails in its own row without sinking the sweep
  const SweepRow& bad = res.rows[3];
  CHECK(bad.status != "ok");
  CHECK(bad.status.find("latitude") != std::string::npos);
  CHECK(bad.status.find(',') == std::string::npos);
  CHECK(res.rows[2].status == "ok");
}

TEST_CASE("pathloss ratio below the model floor fails per point") {
  RunConfig rc = small_run();
  rc.sweep.variable = SweepVariable::pathloss_ratio;
  rc.sweep.grid = {0.5, 1.0};
  const SweepResult res = run_sweep(rc, SweepOptions{});
  REQUIRE(res.rows.size() == 2);
  CHECK(res.rows[0].status != "ok");
  CHECK(res.rows[0].status.find("pathloss_exp") != std::string::npos);
  CHECK(res.rows[1].status == "ok");
  CHECK(res.rows[1].ana[8] >= 0.0);
}

TEST_CASE("a tau sweep shares one set of snapshots per scenario") {
  RunConfig rc = small_run();
  rc.scenario.set_geo_count(5.0);
  rc.sweep.mode = SweepMode::montecarlo;
  rc.sweep.grid = {-10.0, 0.0, 10.0};
  SweepOptions opt;
  opt.trials = 400;
  const SweepResult res = run_sweep(rc, opt);
  REQUIRE(res.rows.size() == 3);
  for (const SweepRow& r : res.rows) {
    CHECK(r.status == "ok");
    CHECK(r.n_trials == 400);
    // visibility does not depend on the threshold, and the draws are shared
    CHECK(r.mc[0] == res.rows[0].mc[0]);
    CHECK(r.mc[1] == res.rows[0].mc[1]);
    for (int q = 0; q < 9; ++q) {
      CHECK(r.mc[q] >= 0.0);
      CHECK(r.mc[q] <= 1.0);
      CHECK(r.se[q] >= 0.0);
    }
  }
  // coverage cannot rise with the threshold on shared draws
  CHECK(res.rows[0].mc[8] >= res.rows[1].mc[8]);
  CHECK(res.rows[1].mc[8] >= res.rows[2].mc[8]);
}

TEST_CASE("validate mode reports z scores and honors the gate") {
  RunConfig rc = small_run();
  rc.scenario.set_geo_count(5.0);
  rc.sweep.mode = SweepMode::validate;
  rc.sweep.grid = {0.0};
  SweepOptions opt;
  opt.trials = 400;

  const SweepResult res = run_sweep(rc, opt);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].status == "ok");
  CHECK(res.rows[0].z_max < 4.0);
  CHECK(!res.z_gate_failed);

  opt.z_threshold = 1e-9;  // any sampling noise at all trips this
  const SweepResult tight = run_sweep(rc, opt);
  CHECK(tight.spec.z_threshold == 1e-9);
  CHECK(tight.z_gate_failed);

  // two identical runs produce byte-identical tables
  const SweepResult again = run_sweep(rc, opt);
  CHECK(sweep_csv(again) == sweep_csv(tight));
}

TEST_CASE("option overrides replace the config list") {
  RunConfig rc = small_run();
  rc.sweep.grid = {0.0};
  SweepOptions opt;
  opt.scenarios = std::vector<Scenario>{Scenario::leo_only};
  const SweepResult res = run_sweep(rc, opt);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].scenario == Scenario::leo_only);
  CHECK(res.rows[0].ana[0] == 0.0);
  CHECK(res.spec.scenarios == std::vector<Scenario>{Scenario::leo_only});
}

TEST_CASE("plot data lands in three sibling files") {
  RunConfig rc = small_run();
  rc.sweep.grid = {0.0, 10.0};
  rc.sweep.scenarios = {Scenario::hybrid, Scenario::leo_only};
  SweepOptions opt;
  opt.seed = 777;
  const SweepResult res = run_sweep(rc, opt);
  const std::string base = "sweep_plot_test";
  emit_plotdata(res, rc, opt, base);

  const std::string csv = slurp(base + ".csv");
  const std::string dat = slurp(base + ".dat");
  const std::string man = slurp(base + ".manifest");
  std::remove((base + ".csv").c_str());
  std::remove((base + ".dat").c_str());
  std::remove((base + ".manifest").c_str());

  CHECK(csv == sweep_csv(res));

  CHECK(dat.find("# scenario: hybrid") != std::string::npos);
  CHECK(dat.find("# scenario: leo_only") != std::string::npos);
  CHECK(dat.find("\n\n\n") != std::string::npos);  // gnuplot index separator

  CHECK(man.find("seed = 777") != std::string::npos);
  CHECK(man.find("variable = tau_db") != std::string::npos);
  CHECK(man.find("[config]") != std::string::npos);
  CHECK(man.find("geo.density_per_km") != std::string::npos);
  CHECK(man.find("[runtime]") != std::string::npos);
}
