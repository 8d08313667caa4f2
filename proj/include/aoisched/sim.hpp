#pragma once

// Seeded Monte-Carlo engine for the slotted uplink.
//
// Slot order: the AP decides from slot-start information, the arrivals of
// every node are drawn (node-index order), the scheduled node's transmission
// outcome is drawn, then local ages and AoIs advance. The reward of slot t is
// the slot-start weighted AoI. Before slot 1 one arrival round is drawn from
// d_0 = D_0 = 1, so every run starts with D_1 = 2.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "aoisched/model.hpp"
#include "aoisched/policies.hpp"

namespace aoisched {

/// Per-run redraw of omega_i ~ U(omega_lo, omega_hi) and p_i ~ U(p_lo, p_hi).
struct ParamRandomization {
  double omega_lo = 0.1;
  double omega_hi = 1.9;
  double p_lo = 0.1;
  double p_hi = 0.9;
};

struct ExperimentConfig {
  std::vector<NodeParams> nodes;
  ArrivalModel arrivals;
  PolicySpec policy;
  std::uint64_t horizon = 100000;
  std::uint64_t runs = 1;
  std::uint64_t base_seed = 0;
  std::uint64_t burn_in = 0;
  std::optional<ParamRandomization> randomize;
  unsigned parallel = 1;

  /// Throws InvalidParameter on inconsistent settings.
  void validate() const;
};

/// Stable per-run seed derived from (base_seed, run_index).
[[nodiscard]] std::uint64_t run_seed(std::uint64_t base_seed, std::uint64_t run_index) noexcept;

/// Uniform [0,1) stream with a platform-independent bit layout.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  double operator()() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// What an observer sees after each slot resolves. The state spans hold the
/// slot-start values; `policy` reflects the state after feedback.
struct SlotRecord {
  std::uint64_t t = 0;
  std::span<const NodeParams> nodes;
  std::span<const Age> local_age;
  std::span<const Age> aoi;
  std::span<const Age> ap_aoi;
  Decision decision;
  SlotFeedback feedback;
  bool delivered = false;
  const Policy* policy = nullptr;
};

using SlotObserver = std::function<void(const SlotRecord&)>;

struct EpisodeResult {
  double ewsaoi = 0.0;
  std::vector<double> mean_aoi;
  std::vector<std::uint64_t> schedule_count;
  std::uint64_t idle_slots = 0;
  std::uint64_t deliveries = 0;
  std::vector<NodeParams> nodes;  ///< effective parameters (after redraw and weights)
};

/// Runs one episode. Deterministic in (config.base_seed, run_index). Raises
/// ConsistencyError if the AP view, the policy belief and the ground truth
/// ever disagree.
[[nodiscard]] EpisodeResult run_episode(const ExperimentConfig& config, std::uint64_t run_index,
                                        const SlotObserver& observer = {});

struct RunMetrics {
  double ewsaoi_mean = 0.0;
  double ewsaoi_std = 0.0;
  double ci95_halfwidth = 0.0;
  std::vector<double> per_node_mean_aoi;
  std::vector<double> per_run_values;
};

/// Aggregates per-run values in ascending run order. The standard deviation
/// is the sample one and is 0 for a single run.
[[nodiscard]] RunMetrics aggregate_runs(std::span<const EpisodeResult> episodes);

/// Runs config.runs episodes (in parallel when config.parallel > 1) and
/// aggregates them.
[[nodiscard]] RunMetrics run_monte_carlo(const ExperimentConfig& config);

}  // namespace aoisched
