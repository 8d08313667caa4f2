#pragma once

// Subcommands of the aoi-sched tool. Each returns the process exit code:
// 0 on success, 1 on a runtime failure, 2 on a configuration error.

#include <iosfwd>
#include <string>

#include "aoisched/cli/config.hpp"

namespace aoisched::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kConfigError = 2 };

struct CommandOptions {
  std::string config_path;
  std::string out_dir;  ///< empty: use the config's output.dir (or "." for figures)
  std::string figure;
  Overrides overrides;
};

int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_bounds(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_figure(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace aoisched::cli
