#include "wnls/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace wnls {

namespace {

const std::map<std::string, std::vector<std::string>>& schema() {
  static const std::map<std::string, std::vector<std::string>> s = {
      {"experiment", {"name", "threads"}},
      {"grid", {"L", "N"}},
      {"time", {"T", "dt"}},
      {"initial", {"kind", "amplitude", "width", "center", "mode_k"}},
      {"dispersion", {"kind", "slope", "relax_rate", "stationary_var", "eps", "halved"}},
      {"ensemble", {"n_paths", "seed"}},
      {"cutoff", {"R", "M"}},
      {"integrator",
       {"splitting", "nonlinearity", "save_stride", "dealias", "blowup_linf_factor",
        "blowup_band_fraction"}},
      {"linear_verify", {"db_values", "kernel_db_values"}},
      {"strichartz", {"T_values"}},
      {"decay_scaling", {"T_values", "steps_per_horizon", "ratio_cap"}},
      {"blowup", {"flag_fraction_cap", "horizon_factor"}},
      {"homogenize", {"eps_values"}},
      {"output", {"dir", "write_trajectory", "write_paths", "write_snapshots"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  throw ConfigError(os.str());
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str(), path);
}

ExperimentConfig ExperimentConfig::parse(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, lineno, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (schema().find(section) == schema().end()) {
        fail(origin, lineno, "unknown section [" + section + "]");
      }
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected key = value");
    if (section.empty()) fail(origin, lineno, "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& allowed = schema().at(section);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(origin, lineno, "unknown key '" + key + "' in section [" + section + "]");
    }
    if (value.empty()) fail(origin, lineno, "empty value for key '" + key + "'");
    auto& sec = cfg.sections_[section];
    if (sec.count(key)) fail(origin, lineno, "duplicate key '" + key + "'");
    sec[key] = value;
  }
  cfg.experiment_ = cfg.get_string_or("experiment", "name", "");
  if (cfg.experiment_.empty()) {
    throw ConfigError(origin + ": missing [experiment] name");
  }
  return cfg;
}

bool ExperimentConfig::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string ExperimentConfig::get_string(const std::string& section,
                                         const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end() || !it->second.count(key)) {
    throw ConfigError("missing required key [" + section + "] " + key);
  }
  return it->second.at(key);
}

std::string ExperimentConfig::get_string_or(const std::string& section, const std::string& key,
                                            const std::string& fallback) const {
  return has(section, key) ? get_string(section, key) : fallback;
}

namespace {
double parse_double(const std::string& section, const std::string& key,
                    const std::string& raw) {
  try {
    size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key [" + section + "] " + key + ": not a real number: '" + raw + "'");
  }
}
}  // namespace

double ExperimentConfig::get_double(const std::string& section, const std::string& key) const {
  return parse_double(section, key, get_string(section, key));
}

double ExperimentConfig::get_double_or(const std::string& section, const std::string& key,
                                       double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

int ExperimentConfig::get_int(const std::string& section, const std::string& key) const {
  const std::string raw = get_string(section, key);
  try {
    size_t pos = 0;
    const long v = std::stol(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument("trailing characters");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ConfigError("key [" + section + "] " + key + ": not an integer: '" + raw + "'");
  }
}

int ExperimentConfig::get_int_or(const std::string& section, const std::string& key,
                                 int fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

bool ExperimentConfig::get_bool_or(const std::string& section, const std::string& key,
                                   bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string raw = get_string(section, key);
  if (raw == "true" || raw == "1") return true;
  if (raw == "false" || raw == "0") return false;
  throw ConfigError("key [" + section + "] " + key + ": expected true/false");
}

std::uint64_t ExperimentConfig::get_seed_or(const std::string& section, const std::string& key,
                                            std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  const std::string raw = get_string(section, key);
  try {
    size_t pos = 0;
    const unsigned long long v = std::stoull(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("key [" + section + "] " + key + ": not a seed: '" + raw + "'");
  }
}

std::vector<double> ExperimentConfig::get_list(const std::string& section,
                                               const std::string& key) const {
  std::istringstream in(get_string(section, key));
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_double(section, key, tok));
  if (out.empty()) throw ConfigError("key [" + section + "] " + key + ": empty list");
  return out;
}

std::vector<double> ExperimentConfig::get_list_or(const std::string& section,
                                                  const std::string& key,
                                                  const std::vector<double>& fallback) const {
  return has(section, key) ? get_list(section, key) : fallback;
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  for (const auto& [sec, kv] : sections_) {
    os << "[" << sec << "]\n";
    for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
  }
  return os.str();
}

GridPtr grid_from(const ExperimentConfig& cfg) {
  const double L = cfg.get_double("grid", "L");
  const int n = cfg.get_int("grid", "N");
  try {
    return make_grid(L, n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[grid]: ") + e.what());
  }
}

StateField initial_from(const ExperimentConfig& cfg, const GridPtr& grid) {
  const std::string kind = cfg.get_string_or("initial", "kind", "gaussian");
  const double amplitude = cfg.get_double_or("initial", "amplitude", 1.0);
  const double width = cfg.get_double_or("initial", "width", 1.0);
  if (kind == "gaussian") {
    return make_gaussian(grid, amplitude, width, cfg.get_double_or("initial", "center", 0.0));
  }
  if (kind == "soliton") {
    return make_soliton_like(grid, amplitude, width);
  }
  if (kind == "mode") {
    return make_mode(grid, cfg.get_int_or("initial", "mode_k", 1));
  }
  throw ConfigError("[initial] kind: expected gaussian, soliton or mode");
}

EvolveConfig evolve_from(const ExperimentConfig& cfg) {
  EvolveConfig e;
  e.t_final = cfg.get_double("time", "T");
  e.dt = cfg.get_double("time", "dt");
  const std::string nl = cfg.get_string_or("integrator", "nonlinearity", "quintic");
  if (nl == "quintic") e.nonlinearity = Nonlinearity::quintic;
  else if (nl == "off") e.nonlinearity = Nonlinearity::off;
  else throw ConfigError("[integrator] nonlinearity: expected quintic or off");
  const std::string split = cfg.get_string_or("integrator", "splitting", "strang");
  if (split == "strang") e.splitting = Splitting::strang;
  else if (split == "lie") e.splitting = Splitting::lie;
  else throw ConfigError("[integrator] splitting: expected strang or lie");
  e.convention.halved = cfg.get_bool_or("dispersion", "halved", false);
  if (cfg.has("cutoff", "R")) e.cutoff_R = cfg.get_double("cutoff", "R");
  if (cfg.has("cutoff", "M")) e.cutoff_M = cfg.get_double("cutoff", "M");
  if (e.cutoff_R && e.cutoff_M) throw ConfigError("[cutoff]: set at most one of R and M");
  e.save_stride = cfg.get_int_or("integrator", "save_stride", 0);
  e.dealias_truncate = cfg.get_bool_or("integrator", "dealias", false);
  e.blowup_linf_factor = cfg.get_double_or("integrator", "blowup_linf_factor", 25.0);
  e.blowup_band_fraction = cfg.get_double_or("integrator", "blowup_band_fraction", 1e-4);
  try {
    (void)e.steps();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("[time]: ") + ex.what());
  }
  return e;
}

DispersionSpec dispersion_from(const ExperimentConfig& cfg) {
  DispersionSpec d;
  const std::string kind = cfg.get_string_or("dispersion", "kind", "brownian");
  if (kind == "brownian") {
    d.kind = PathKind::brownian;
  } else if (kind == "ou" || kind == "telegraph") {
    d.kind = PathKind::integrated_stationary;
    d.driver.kind = (kind == "ou") ? StationaryDriver::Kind::ou
                                   : StationaryDriver::Kind::telegraph;
    d.driver.relax_rate = cfg.get_double_or("dispersion", "relax_rate", 1.0);
    d.driver.stationary_var = cfg.get_double_or("dispersion", "stationary_var", 0.5);
    d.eps = cfg.get_double_or("dispersion", "eps", 0.1);
  } else if (kind == "deterministic") {
    d.kind = PathKind::deterministic;
    d.slope = cfg.get_double_or("dispersion", "slope", 1.0);
  } else {
    throw ConfigError("[dispersion] kind: expected brownian, ou, telegraph or deterministic");
  }
  return d;
}

int n_paths_from(const ExperimentConfig& cfg) {
  const int n = cfg.get_int("ensemble", "n_paths");
  if (n < 2) throw ConfigError("[ensemble] n_paths: need at least 2");
  return n;
}

std::uint64_t seed_from(const ExperimentConfig& cfg) {
  return cfg.get_seed_or("ensemble", "seed", 12345u);
}

}  // namespace wnls
