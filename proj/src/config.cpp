#include "satcov/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace satcov {

namespace {

constexpr const char* kDefaultConfigText = R"(# hybrid GEO/LEO downlink defaults
orbit.earth_radius_km     = 6378
orbit.geo_altitude_km     = 35786
orbit.leo_altitude_km     = 600

terminal.latitude_deg     = 0
terminal.longitude_deg    = 0
terminal.receive_gain_db  = 0

channel.carrier_freq_ghz  = 20
channel.bandwidth_mhz     = 30
channel.noise_psd_dbm_hz  = -174
channel.nakagami_m        = 1

coverage.tau_db           = 0

geo.count                 = 1000
geo.eirp_density_dbw_mhz  = 40
geo.mainlobe_gain_db      = 0
geo.bias_db               = 0
geo.pathloss_exp          = 2.7

leo.count                 = 100
leo.eirp_density_dbw_mhz  = 4
leo.mainlobe_gain_db      = 0
leo.bias_db               = 0
leo.pathloss_exp          = 3

quadrature.rel_tol        = 1e-6
quadrature.abs_tol        = 1e-12
quadrature.max_subdivisions = 2000

sweep.variable            = tau_db
sweep.grid                = -10,-5,0,5,10,15,20
sweep.mode                = analytic
sweep.scenarios           = hybrid
validate.z_threshold      = 4
)";

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw std::invalid_argument("config invalid: " + key + " " + what);
}

class KeyBag {
 public:
  explicit KeyBag(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    " is not `key = value`: " + line);
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty() || value.empty())
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    " has an empty key or value");
      if (entries_.count(key))
        throw std::invalid_argument("config key appears twice: " + key);
      entries_[key] = value;
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string take(const std::string& key) {
    auto it = entries_.find(key);
    std::string v = it->second;
    entries_.erase(it);
    return v;
  }

  double take_double(const std::string& key) {
    const std::string v = take(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
      fail(key, "is not a number: " + v);
    return x;
  }

  // exactly one of the two spellings; `scale` converts the friendly one
  double take_either(const std::string& friendly, const std::string& canonical,
                     double fallback, double (*convert)(double)) {
    if (has(friendly) && has(canonical))
      throw std::invalid_argument("config keys conflict: set only one of " + friendly +
                                  " and " + canonical);
    if (has(canonical)) return take_double(canonical);
    if (has(friendly)) return convert(take_double(friendly));
    return fallback;
  }

  void expect_empty() const {
    if (entries_.empty()) return;
    std::string msg = "unknown config key(s):";
    for (const auto& [k, v] : entries_) msg += " " + k;
    throw std::invalid_argument(msg);
  }

 private:
  std::map<std::string, std::string> entries_;
};

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double deg_to_rad(double deg) { return deg * kPi / 180.0; }
double ghz_to_hz(double g) { return g * 1e9; }
double mhz_to_hz(double m) { return m * 1e6; }

std::vector<double> parse_grid(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(key, "has an empty entry");
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0' || !std::isfinite(x))
      fail(key, "entry is not a number: " + item);
    out.push_back(x);
  }
  return out;
}

void parse_sat(KeyBag& bag, const std::string& name, SatParams& sat, bool is_geo,
               const OrbitGeometry& geom, double bandwidth_hz, double receive_gain,
               double default_eirp_dbw_mhz, double default_alpha) {
  const std::string density_key = is_geo ? name + ".density_per_km" : name + ".density_per_km2";
  if (bag.has(name + ".count") && bag.has(density_key))
    throw std::invalid_argument("config keys conflict: set only one of " + name +
                                ".count and " + density_key);
  if (bag.has(density_key)) {
    sat.density = bag.take_double(density_key);
  } else {
    const double count =
        bag.has(name + ".count") ? bag.take_double(name + ".count") : (is_geo ? 1000.0 : 100.0);
    if (count < 0.0) fail(name + ".count", "must be >= 0");
    sat.density = is_geo ? count / (2.0 * kPi * geom.geo_orbit_radius_km())
                         : count / (4.0 * kPi * geom.leo_shell_radius_km() *
                                    geom.leo_shell_radius_km());
  }
  if (sat.density < 0.0) fail(density_key, "must be >= 0");

  const double sat_mainlobe =
      bag.take_either(name + ".mainlobe_gain_db", name + ".mainlobe_gain", 1.0, db_to_linear);
  // misaligned interfering beams default to 30 dB below the mainlobe
  const double sat_interferer = bag.take_either(
      name + ".interferer_gain_db", name + ".interferer_gain", sat_mainlobe * 1e-3, db_to_linear);
  sat.budget.bias = bag.take_either(name + ".bias_db", name + ".bias", 1.0, db_to_linear);
  sat.budget.pathloss_exp = bag.has(name + ".pathloss_exp")
                                ? bag.take_double(name + ".pathloss_exp")
                                : default_alpha;

  if (bag.has(name + ".eirp_density_dbw_mhz") && bag.has(name + ".tx_power_w"))
    throw std::invalid_argument("config keys conflict: set only one of " + name +
                                ".eirp_density_dbw_mhz and " + name + ".tx_power_w");
  if (bag.has(name + ".tx_power_w")) {
    sat.budget.tx_power_w = bag.take_double(name + ".tx_power_w");
  } else {
    const double eirp = bag.has(name + ".eirp_density_dbw_mhz")
                            ? bag.take_double(name + ".eirp_density_dbw_mhz")
                            : default_eirp_dbw_mhz;
    sat.budget.tx_power_w = eirp_density_to_power(eirp, sat_mainlobe, bandwidth_hz);
  }

  sat.budget.mainlobe_gain = sat_mainlobe * receive_gain;
  sat.budget.interferer_gain = sat_interferer * receive_gain;
}

}  // namespace

void validate_scenario(const ScenarioConfig& cfg) {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0)) fail(key, "must be > 0");
  };
  positive(cfg.geom.earth_radius_km, "orbit.earth_radius_km");
  positive(cfg.geom.geo_altitude_km, "orbit.geo_altitude_km");
  positive(cfg.geom.leo_altitude_km, "orbit.leo_altitude_km");
  if (!(cfg.geom.geo_altitude_km > cfg.geom.leo_altitude_km))
    fail("orbit.geo_altitude_km", "must exceed orbit.leo_altitude_km");
  if (!(std::fabs(cfg.terminal.latitude_phi) <= kPi / 2.0))
    fail("terminal.latitude_rad", "must lie in [-pi/2, pi/2]");
  if (!(cfg.terminal.longitude_theta >= 0.0) || !(cfg.terminal.longitude_theta < 2.0 * kPi))
    fail("terminal.longitude_rad", "must lie in [0, 2*pi)");
  if (cfg.geo.density < 0.0) fail("geo.density_per_km", "must be >= 0");
  if (cfg.leo.density < 0.0) fail("leo.density_per_km2", "must be >= 0");
  if (!(cfg.geo.density > 0.0) && !(cfg.leo.density > 0.0))
    throw std::invalid_argument("config invalid: at least one satellite density must be > 0");
  const std::pair<const SatParams*, const char*> sides[] = {{&cfg.geo, "geo"},
                                                            {&cfg.leo, "leo"}};
  for (const auto& [sat, name] : sides) {
    const std::string n = name;
    positive(sat->budget.tx_power_w, (n + ".tx_power_w").c_str());
    positive(sat->budget.mainlobe_gain, (n + ".mainlobe_gain").c_str());
    positive(sat->budget.interferer_gain, (n + ".interferer_gain").c_str());
    positive(sat->budget.bias, (n + ".bias").c_str());
    if (!(sat->budget.pathloss_exp >= 2.0)) fail(n + ".pathloss_exp", "must be >= 2");
  }
  positive(cfg.channel.carrier_freq_hz, "channel.carrier_freq_hz");
  positive(cfg.channel.bandwidth_hz, "channel.bandwidth_hz");
  if (cfg.channel.nakagami_m < 1 || cfg.channel.nakagami_m > kMaxNakagamiM)
    fail("channel.nakagami_m", "must be an integer in [1, 20]");
  positive(cfg.tau, "coverage.tau");
  positive(cfg.quad.rel_tol, "quadrature.rel_tol");
  positive(cfg.quad.abs_tol, "quadrature.abs_tol");
  if (cfg.quad.max_subdivisions < 1) fail("quadrature.max_subdivisions", "must be >= 1");
}

RunConfig parse_config_text(const std::string& text) {
  KeyBag bag(text);
  RunConfig rc;
  ScenarioConfig& cfg = rc.scenario;

  if (bag.has("orbit.earth_radius_km"))
    cfg.geom.earth_radius_km = bag.take_double("orbit.earth_radius_km");
  if (bag.has("orbit.geo_altitude_km"))
    cfg.geom.geo_altitude_km = bag.take_double("orbit.geo_altitude_km");
  if (bag.has("orbit.leo_altitude_km"))
    cfg.geom.leo_altitude_km = bag.take_double("orbit.leo_altitude_km");

  cfg.terminal.latitude_phi =
      bag.take_either("terminal.latitude_deg", "terminal.latitude_rad", 0.0, deg_to_rad);
  double theta =
      bag.take_either("terminal.longitude_deg", "terminal.longitude_rad", 0.0, deg_to_rad);
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta < 0.0) theta += 2.0 * kPi;
  cfg.terminal.longitude_theta = theta;
  const double receive_gain =
      db_to_linear(bag.has("terminal.receive_gain_db")
                       ? bag.take_double("terminal.receive_gain_db")
                       : 0.0);

  cfg.channel.carrier_freq_hz =
      bag.take_either("channel.carrier_freq_ghz", "channel.carrier_freq_hz", 20e9, ghz_to_hz);
  cfg.channel.bandwidth_hz =
      bag.take_either("channel.bandwidth_mhz", "channel.bandwidth_hz", 30e6, mhz_to_hz);
  if (bag.has("channel.noise_psd_dbm_hz"))
    cfg.channel.noise_psd_dbm_hz = bag.take_double("channel.noise_psd_dbm_hz");
  if (bag.has("channel.nakagami_m")) {
    const double m = bag.take_double("channel.nakagami_m");
    if (m != std::floor(m))
      fail("channel.nakagami_m", "must be an integer (the fading CDF series and the "
                                 "coverage binomial sum require integer m)");
    cfg.channel.nakagami_m = static_cast<int>(m);
  }

  cfg.tau = bag.take_either("coverage.tau_db", "coverage.tau", 1.0, db_to_linear);

  parse_sat(bag, "geo", cfg.geo, true, cfg.geom, cfg.channel.bandwidth_hz, receive_gain,
            40.0, 2.7);
  parse_sat(bag, "leo", cfg.leo, false, cfg.geom, cfg.channel.bandwidth_hz, receive_gain,
            4.0, 3.0);

  if (bag.has("quadrature.rel_tol")) cfg.quad.rel_tol = bag.take_double("quadrature.rel_tol");
  if (bag.has("quadrature.abs_tol")) cfg.quad.abs_tol = bag.take_double("quadrature.abs_tol");
  if (bag.has("quadrature.max_subdivisions")) {
    const double n = bag.take_double("quadrature.max_subdivisions");
    if (n != std::floor(n)) fail("quadrature.max_subdivisions", "must be an integer");
    cfg.quad.max_subdivisions = static_cast<int>(n);
  }

  SweepSpec& sw = rc.sweep;
  if (bag.has("sweep.variable")) {
    const std::string v = bag.take("sweep.variable");
    if (v == "tau_db") sw.variable = SweepVariable::tau_db;
    else if (v == "latitude_deg") sw.variable = SweepVariable::latitude_deg;
    else if (v == "bias_ratio_db") sw.variable = SweepVariable::bias_ratio_db;
    else if (v == "leo_count") sw.variable = SweepVariable::leo_count;
    else if (v == "geo_count") sw.variable = SweepVariable::geo_count;
    else if (v == "pathloss_ratio") sw.variable = SweepVariable::pathloss_ratio;
    else fail("sweep.variable", "must be one of tau_db latitude_deg bias_ratio_db "
                                "leo_count geo_count pathloss_ratio (got " + v + ")");
  }
  sw.grid = bag.has("sweep.grid") ? parse_grid("sweep.grid", bag.take("sweep.grid"))
                                  : std::vector<double>{-10, -5, 0, 5, 10, 15, 20};
  if (sw.grid.empty()) fail("sweep.grid", "must be nonempty");
  if (sw.grid.size() > 1) {
    const bool inc = sw.grid[1] > sw.grid[0];
    for (size_t i = 1; i < sw.grid.size(); ++i)
      if (inc ? !(sw.grid[i] > sw.grid[i - 1]) : !(sw.grid[i] < sw.grid[i - 1]))
        fail("sweep.grid", "must be strictly monotone");
  }
  if (bag.has("sweep.mode")) sw.mode = sweep_mode_from_string(bag.take("sweep.mode"));
  if (bag.has("sweep.scenarios"))
    sw.scenarios = scenarios_from_string(bag.take("sweep.scenarios"));
  if (bag.has("validate.z_threshold")) {
    sw.z_threshold = bag.take_double("validate.z_threshold");
    if (!(sw.z_threshold > 0.0)) fail("validate.z_threshold", "must be > 0");
  }

  bag.expect_empty();
  validate_scenario(cfg);
  return rc;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

RunConfig default_run_config() { return parse_config_text(kDefaultConfigText); }

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string emit_config(const RunConfig& rc) {
  const ScenarioConfig& c = rc.scenario;
  std::ostringstream out;
  out << "orbit.earth_radius_km = " << fmt(c.geom.earth_radius_km) << "\n";
  out << "orbit.geo_altitude_km = " << fmt(c.geom.geo_altitude_km) << "\n";
  out << "orbit.leo_altitude_km = " << fmt(c.geom.leo_altitude_km) << "\n";
  out << "terminal.latitude_rad = " << fmt(c.terminal.latitude_phi) << "\n";
  out << "terminal.longitude_rad = " << fmt(c.terminal.longitude_theta) << "\n";
  out << "channel.carrier_freq_hz = " << fmt(c.channel.carrier_freq_hz) << "\n";
  out << "channel.bandwidth_hz = " << fmt(c.channel.bandwidth_hz) << "\n";
  out << "channel.noise_psd_dbm_hz = " << fmt(c.channel.noise_psd_dbm_hz) << "\n";
  out << "channel.nakagami_m = " << c.channel.nakagami_m << "\n";
  out << "coverage.tau = " << fmt(c.tau) << "\n";
  out << "geo.density_per_km = " << fmt(c.geo.density) << "\n";
  out << "geo.tx_power_w = " << fmt(c.geo.budget.tx_power_w) << "\n";
  out << "geo.mainlobe_gain = " << fmt(c.geo.budget.mainlobe_gain) << "\n";
  out << "geo.interferer_gain = " << fmt(c.geo.budget.interferer_gain) << "\n";
  out << "geo.bias = " << fmt(c.geo.budget.bias) << "\n";
  out << "geo.pathloss_exp = " << fmt(c.geo.budget.pathloss_exp) << "\n";
  out << "leo.density_per_km2 = " << fmt(c.leo.density) << "\n";
  out << "leo.tx_power_w = " << fmt(c.leo.budget.tx_power_w) << "\n";
  out << "leo.mainlobe_gain = " << fmt(c.leo.budget.mainlobe_gain) << "\n";
  out << "leo.interferer_gain = " << fmt(c.leo.budget.interferer_gain) << "\n";
  out << "leo.bias = " << fmt(c.leo.budget.bias) << "\n";
  out << "leo.pathloss_exp = " << fmt(c.leo.budget.pathloss_exp) << "\n";
  out << "quadrature.rel_tol = " << fmt(c.quad.rel_tol) << "\n";
  out << "quadrature.abs_tol = " << fmt(c.quad.abs_tol) << "\n";
  out << "quadrature.max_subdivisions = " << c.quad.max_subdivisions << "\n";
  out << "sweep.variable = " << to_string(rc.sweep.variable) << "\n";
  out << "sweep.grid = ";
  for (size_t i = 0; i < rc.sweep.grid.size(); ++i)
    out << (i ? "," : "") << fmt(rc.sweep.grid[i]);
  out << "\n";
  out << "sweep.mode = " << to_string(rc.sweep.mode) << "\n";
  out << "sweep.scenarios = ";
  for (size_t i = 0; i < rc.sweep.scenarios.size(); ++i)
    out << (i ? "," : "") << to_string(rc.sweep.scenarios[i]);
  out << "\n";
  out << "validate.z_threshold = " << fmt(rc.sweep.z_threshold) << "\n";
  return out.str();
}

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::tau_db: return "tau_db";
    case SweepVariable::latitude_deg: return "latitude_deg";
    case SweepVariable::bias_ratio_db: return "bias_ratio_db";
    case SweepVariable::leo_count: return "leo_count";
    case SweepVariable::geo_count: return "geo_count";
    case SweepVariable::pathloss_ratio: return "pathloss_ratio";
  }
  return "?";
}

const char* to_string(SweepMode m) {
  switch (m) {
    case SweepMode::analytic: return "analytic";
    case SweepMode::montecarlo: return "montecarlo";
    case SweepMode::validate: return "validate";
  }
  return "?";
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::hybrid: return "hybrid";
    case Scenario::geo_only: return "geo_only";
    case Scenario::leo_only: return "leo_only";
  }
  return "?";
}

SweepMode sweep_mode_from_string(const std::string& s) {
  if (s == "analytic") return SweepMode::analytic;
  if (s == "montecarlo") return SweepMode::montecarlo;
  if (s == "validate") return SweepMode::validate;
  throw std::invalid_argument("sweep.mode must be analytic, montecarlo, or validate (got " +
                              s + ")");
}

std::vector<Scenario> scenarios_from_string(const std::string& s) {
  std::vector<Scenario> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item == "hybrid") out.push_back(Scenario::hybrid);
    else if (item == "geo_only") out.push_back(Scenario::geo_only);
    else if (item == "leo_only") out.push_back(Scenario::leo_only);
    else throw std::invalid_argument(
        "sweep.scenarios entries must be hybrid, geo_only, or leo_only (got " + item + ")");
  }
  if (out.empty()) throw std::invalid_argument("sweep.scenarios must be nonempty");
  return out;
}

}  // namespace satcov
