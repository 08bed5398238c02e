#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "swarmkit/cli.hpp"
#include "swarmkit/text.hpp"

namespace {

std::optional<std::uint64_t> env_seed() {
  const char* value = std::getenv("SWARMKIT_SEED");
  if (!value) return std::nullopt;
  const auto parsed = swarmkit::parse_integer(value);
  if (!parsed || *parsed < 0) {
    std::cerr << "SWARMKIT_SEED is not a non-negative integer: " << value
              << "\n";
    std::exit(swarmkit::cli::kConfigError);
  }
  return static_cast<std::uint64_t>(*parsed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swarmkit — swarm scenario runner and data emitter"};
  app.require_subcommand(1);

  swarmkit::cli::RunOptions run_options;
  CLI::App* run = app.add_subcommand("run", "run one scenario file");
  run->add_option("scenario", run_options.scenario_path, "scenario JSON file")
      ->required();
  run->add_option("--override", run_options.overrides,
                  "key=value config override (repeatable)");
  run->add_option("--out", run_options.out_dir, "output directory");
  run->add_flag("--verbose-net", run_options.verbose_net,
                "log per-pair delivery outcomes");

  swarmkit::cli::SweepOptions sweep_options;
  CLI::App* sweep = app.add_subcommand("sweep", "run an (n, seed) grid");
  sweep->add_option("scenario", sweep_options.scenario_path,
                    "scenario JSON file")
      ->required();
  sweep->add_option("--agents", sweep_options.agent_counts,
                    "agent counts, e.g. --agents 2,4,6")
      ->required()
      ->delimiter(',');
  sweep->add_option("--seeds", sweep_options.seeds, "seeds per count");
  sweep->add_option("--out", sweep_options.out_dir, "output directory");
  sweep->add_option("--workers", sweep_options.workers,
                    "concurrent runs (default 1)");

  CLI11_PARSE(app, argc, argv);

  std::string error;
  int code = swarmkit::cli::kOk;
  if (run->parsed()) {
    run_options.env_seed = env_seed();
    code = swarmkit::cli::run_command(run_options, &error);
  } else if (sweep->parsed()) {
    sweep_options.env_seed = env_seed();
    code = swarmkit::cli::sweep_command(sweep_options, &error);
  }
  if (code != swarmkit::cli::kOk) std::cerr << "error: " << error << "\n";
  return code;
}
