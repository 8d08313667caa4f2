#pragma once

// JSON experiment documents. See configs/README.md for the schema.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aoisched/policies.hpp"
#include "aoisched/sim.hpp"

namespace aoisched::cli {

/// Schema violation; `field` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);

  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct SweepAxis {
  std::string parameter;  ///< lambda, p, omega, N or horizon
  std::vector<double> values;
};

struct ConfigDocument {
  ExperimentConfig experiment;
  std::optional<SweepAxis> sweep;
  std::vector<PolicyKind> sweep_policies;  ///< empty: use experiment.policy
  std::string output_dir;
};

/// Parses and validates a document. Throws ConfigError.
[[nodiscard]] ConfigDocument parse_config(const std::string& text);
[[nodiscard]] ConfigDocument load_config(const std::string& path);

/// Command-line overrides applied after parsing.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> horizon;
  std::optional<unsigned> parallel;
};

void apply_overrides(ExperimentConfig& config, const Overrides& overrides);

/// Returns a copy of `config` with one sweep coordinate applied. lambda, p
/// and omega are set on every node; N replicates the first node.
[[nodiscard]] ExperimentConfig apply_sweep_value(const ExperimentConfig& config,
                                                 const std::string& parameter, double value);

[[nodiscard]] bool is_sweep_parameter(const std::string& name);

}  // namespace aoisched::cli
