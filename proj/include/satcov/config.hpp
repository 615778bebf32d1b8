#pragma once

#include <string>
#include <vector>

#include "satcov/scenario.hpp"

namespace satcov {

enum class SweepVariable { tau_db, latitude_deg, bias_ratio_db, leo_count, geo_count,
                           pathloss_ratio };
enum class SweepMode { analytic, montecarlo, validate };
enum class Scenario { hybrid, geo_only, leo_only };

struct SweepSpec {
  SweepVariable variable = SweepVariable::tau_db;
  std::vector<double> grid;  // nonempty, strictly monotone
  SweepMode mode = SweepMode::analytic;
  std::vector<Scenario> scenarios{Scenario::hybrid};
  double z_threshold = 4.0;  // validate mode gate on |analytic - mc| / std_error
};

struct RunConfig {
  ScenarioConfig scenario;
  SweepSpec sweep;
};

// Flat `section.key = value` text. Friendly keys carry units in their names
// (dB, degrees, counts) and are converted once at parse; canonical keys are
// the internal linear/radian/density quantities that emit_config writes, so
// parse(emit(x)) reproduces x exactly. Unknown or duplicate keys and any
// violated invariant raise std::invalid_argument naming the key.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);
std::string emit_config(const RunConfig& rc);

// Built-in defaults; identical to the shipped configs/default.conf.
RunConfig default_run_config();

const char* to_string(SweepVariable v);
const char* to_string(SweepMode m);
const char* to_string(Scenario s);
SweepMode sweep_mode_from_string(const std::string& s);
std::vector<Scenario> scenarios_from_string(const std::string& s);

}  // namespace satcov
