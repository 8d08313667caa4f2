#pragma once

// CSV output. Numbers use '.' as the decimal separator and a fixed number of
// digits so identical inputs give byte-identical files.

#include <optional>
#include <string>
#include <vector>

#include "aoisched/analysis.hpp"
#include "aoisched/sim.hpp"

namespace aoisched::cli {

[[nodiscard]] std::string format_number(double x);
[[nodiscard]] std::string join_numbers(const std::vector<double>& xs);

/// Analytic bounds exist only for Bernoulli arrivals with fixed parameters.
[[nodiscard]] std::optional<BoundReport> bounds_if_computable(const ExperimentConfig& config);

[[nodiscard]] std::string simulate_header();
[[nodiscard]] std::string simulate_row(const ExperimentConfig& config, const RunMetrics& metrics);

[[nodiscard]] std::string bounds_header();
[[nodiscard]] std::string bounds_row(const std::vector<NodeParams>& nodes,
                                     const BoundReport& report);

/// One point of a figure or sweep: series value at coordinate x.
struct TidyRow {
  std::string figure;
  std::string x_name;
  double x = 0.0;
  std::string series;
  double value = 0.0;
  double ci95 = 0.0;
  std::string params;  ///< self-describing reproduction parameters
};

[[nodiscard]] std::string tidy_header();
[[nodiscard]] std::string tidy_row(const TidyRow& row);
[[nodiscard]] std::string tidy_csv(const std::vector<TidyRow>& rows);

/// Compact "key=value" description of an experiment, for TidyRow::params.
[[nodiscard]] std::string describe(const ExperimentConfig& config);

}  // namespace aoisched::cli
