#pragma once

#include <cstdint>
#include <string>

#include "wnls/config.hpp"

namespace wnls::cli {

// Exit code contract shared by all subcommands.
inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitEnsemble = 2;    // an ensemble-level claim failed
inline constexpr int kExitResolution = 3;  // grid cannot resolve the request
inline constexpr int kExitBlowup = 4;      // blow-up flag raised (informational)

struct RunOptions {
  std::string out_dir;
  int threads = 1;
  std::uint64_t seed = 0;
};

// Dispatches on the subcommand name, writes report.json (and CSV side files)
// into opt.out_dir, and returns the process exit code. Throws ConfigError on
// invalid configuration.
int run_experiment(const std::string& name, const ExperimentConfig& cfg, const RunOptions& opt);

}  // namespace wnls::cli
