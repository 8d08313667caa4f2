#pragma once

// Parameter sweeps and the preset figure experiments.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aoisched/cli/config.hpp"
#include "aoisched/cli/report.hpp"

namespace aoisched::cli {

class UnknownFigure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FigureOptions {
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> horizon;
  std::uint64_t seed = 1;
  unsigned parallel = 1;
};

/// fig3 ... fig8.
[[nodiscard]] const std::vector<std::string>& figure_names();

/// Default (runs, horizon) of a preset.
[[nodiscard]] std::pair<std::uint64_t, std::uint64_t> figure_defaults(const std::string& name);

/// Runs a preset sweep. Throws UnknownFigure for names outside figure_names().
[[nodiscard]] std::vector<TidyRow> run_figure(const std::string& name,
                                              const FigureOptions& options);

/// Runs the sweep described by a config document (which must have a sweep).
[[nodiscard]] std::vector<TidyRow> run_sweep(const ConfigDocument& doc);

}  // namespace aoisched::cli
