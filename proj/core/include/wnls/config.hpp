#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wnls/field.hpp"
#include "wnls/montecarlo.hpp"

namespace wnls {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat experiment configuration: [section] headers, key = value lines and
// '#' comments. The key set is schema-checked; unknown sections or keys and
// duplicate keys are rejected.
class ExperimentConfig {
 public:
  static ExperimentConfig load(const std::string& path);
  static ExperimentConfig parse(const std::string& text, const std::string& origin);

  const std::string& experiment() const { return experiment_; }

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  int get_int(const std::string& section, const std::string& key) const;
  int get_int_or(const std::string& section, const std::string& key, int fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
  std::uint64_t get_seed_or(const std::string& section, const std::string& key,
                            std::uint64_t fallback) const;
  // Space-separated list of reals.
  std::vector<double> get_list(const std::string& section, const std::string& key) const;
  std::vector<double> get_list_or(const std::string& section, const std::string& key,
                                  const std::vector<double>& fallback) const;

  // Sorted textual echo, used for digests and report embedding.
  std::string canonical() const;
  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::string experiment_;
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// Builders from the common sections. Each throws ConfigError on missing or
// inconsistent keys.
GridPtr grid_from(const ExperimentConfig& cfg);
StateField initial_from(const ExperimentConfig& cfg, const GridPtr& grid);
EvolveConfig evolve_from(const ExperimentConfig& cfg);
DispersionSpec dispersion_from(const ExperimentConfig& cfg);
int n_paths_from(const ExperimentConfig& cfg);
std::uint64_t seed_from(const ExperimentConfig& cfg);

}  // namespace wnls
