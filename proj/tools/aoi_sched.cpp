// aoi-sched: run AoI scheduling experiments from the command line.

#include <iostream>

#include "CLI11.hpp"
#include "aoisched/cli/commands.hpp"
#include "aoisched/cli/figures.hpp"

namespace {

void add_common(CLI::App* cmd, aoisched::cli::CommandOptions& opts, bool needs_config) {
  auto* config = cmd->add_option("--config", opts.config_path, "Experiment config (JSON)");
  if (needs_config) config->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir, "Output directory");
  cmd->add_option("--seed", opts.overrides.seed, "Base seed (overrides the config)");
  cmd->add_option("--runs", opts.overrides.runs, "Monte-Carlo runs")->check(CLI::PositiveNumber);
  cmd->add_option("--horizon", opts.overrides.horizon, "Slots per run")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--parallel", opts.overrides.parallel, "Worker threads")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace aoisched::cli;
  CLI::App app{"Age-of-information scheduling simulator"};
  app.require_subcommand(1);

  CommandOptions opts;
  auto* simulate = app.add_subcommand("simulate", "Run one Monte-Carlo experiment");
  add_common(simulate, opts, true);
  auto* bounds = app.add_subcommand("bounds", "Print analytic bounds for a network");
  add_common(bounds, opts, true);
  auto* sweep = app.add_subcommand("sweep", "Run the sweep described in a config");
  add_common(sweep, opts, true);
  auto* validate = app.add_subcommand("validate", "Check a config without running it");
  add_common(validate, opts, true);
  auto* figure = app.add_subcommand("figure", "Run a preset figure experiment");
  add_common(figure, opts, false);
  figure->add_option("name", opts.figure, "fig3 ... fig8")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*simulate) return cmd_simulate(opts, std::cout, std::cerr);
  if (*bounds) return cmd_bounds(opts, std::cout, std::cerr);
  if (*sweep) return cmd_sweep(opts, std::cout, std::cerr);
  if (*validate) return cmd_validate(opts, std::cout, std::cerr);
  if (*figure) return cmd_figure(opts, std::cout, std::cerr);
  return kConfigError;
}
