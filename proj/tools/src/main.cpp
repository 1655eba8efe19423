#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiments.hpp"
#include "wnls/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pseudospectral experiments for the quintic Schrodinger equation "
               "with white-noise dispersion"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 0;
  std::uint64_t seed = 0;

  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"linear_verify", "dispersion-group checks: unitarity, flow property, closed form, kernel"},
      {"strichartz", "Monte-Carlo smoothing-functional bound"},
      {"decay_scaling", "short-horizon free-flow space-time norm scaling"},
      {"evolve", "single-path or ensemble quintic evolution"},
      {"blowup_compare", "deterministic blow-up vs Brownian-dispersion survival"},
      {"homogenize", "smooth-driver to white-noise convergence sweep"},
  };
  for (const auto& [name, help] : subcommands) {
    auto* sub = app.add_subcommand(name, help);
    std::string dashed = name;
    for (auto& c : dashed) {
      if (c == '_') c = '-';
    }
    if (dashed != name) sub->alias(dashed);
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--threads", threads, "worker cap (default: config value, then 1)");
    sub->add_option("--seed", seed, "root seed override");
    sub->add_option("--out", out_dir, "output directory (default: config value, then out_<name>)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wnls::cli::kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().at(0);
  const std::string name = sub->get_name();
  try {
    wnls::ExperimentConfig cfg = wnls::ExperimentConfig::load(config_path);
    if (cfg.experiment() != name) {
      throw wnls::ConfigError("config names experiment '" + cfg.experiment() +
                              "' but the subcommand is '" + name + "'");
    }
    wnls::cli::RunOptions opt;
    opt.threads = sub->count("--threads") > 0 ? threads : cfg.get_int_or("experiment", "threads", 1);
    if (opt.threads < 1) throw wnls::ConfigError("threads must be at least 1");
    opt.seed = sub->count("--seed") > 0 ? seed : wnls::seed_from(cfg);
    opt.out_dir = sub->count("--out") > 0
                      ? out_dir
                      : cfg.get_string_or("output", "dir", "out_" + name);
    return wnls::cli::run_experiment(name, cfg, opt);
  } catch (const wnls::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return wnls::cli::kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return wnls::cli::kExitUsage;
  }
}
