#pragma once

// Belief-state machinery for the partially observed local age.
//
// With a deterministic start (d_0 = 1) the AP's posterior over a node's local
// age is always determined by two integers: k, the last observed local age,
// and m, the number of slots since that observation. The implied destination
// AoI is k + m. This header provides the closed-form belief vectors for
// Bernoulli and two-state Markov arrivals, the max-weight index derived from
// them, and a dense truncated Bayes filter that serves as a reference.

#include <optional>
#include <vector>

#include "aoisched/model.hpp"

namespace aoisched {

/// Last-observation statistic (k, m). Both are >= 1.
struct LocBelief {
  Age k = 1;
  Age m = 1;

  [[nodiscard]] Age implied_aoi() const noexcept { return k + m; }
  friend bool operator==(const LocBelief&, const LocBelief&) = default;
};

struct BeliefEntry {
  Age age = 1;
  double prob = 0.0;
};

/// Sparse distribution over local ages, ages strictly increasing.
class BeliefVector {
 public:
  BeliefVector() = default;
  explicit BeliefVector(std::vector<BeliefEntry> entries);

  static BeliefVector point_mass(Age age);

  [[nodiscard]] const std::vector<BeliefEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

  /// Probability assigned to `age` (0 when absent).
  [[nodiscard]] double at(Age age) const noexcept;
  [[nodiscard]] double total() const noexcept;
  [[nodiscard]] double mean() const noexcept;
  [[nodiscard]] Age max_age() const noexcept;

  /// Throws ConsistencyError unless ages increase strictly, entries are
  /// non-negative and the mass sums to one within `tol`.
  void validate(double tol = 1e-12) const;

 private:
  std::vector<BeliefEntry> entries_;
};

/// Largest absolute entry difference over the union of both supports.
[[nodiscard]] double max_abs_difference(const BeliefVector& a, const BeliefVector& b);

// --- Bernoulli arrivals ------------------------------------------------------

/// Posterior local-age distribution after last observing age k, m slots ago:
/// lambda * gamma^(j-1) at ages 1..m and gamma^m at age k+m.
[[nodiscard]] BeliefVector belief_vector(Age k, Age m, double lambda);

/// Mean of belief_vector(k, m, lambda), in closed form.
[[nodiscard]] double expected_local_age(Age k, Age m, double lambda);

/// Max-weight index term G = (k+m) - E[d] = m + (1 - (1-lambda)^m)(k - 1/lambda).
[[nodiscard]] double pomw_index_term(Age k, Age m, double lambda);

/// Advances the (k, m) statistic by one slot. An observation resets it to
/// (observation, 1); observations outside {1..m} and {k+m} are impossible
/// and raise ConsistencyError, as does an observation for an unscheduled node.
[[nodiscard]] LocBelief update_loc_belief(LocBelief z, bool scheduled,
                                          std::optional<Age> observation);

// --- Dense Bayes filter ------------------------------------------------------

/// One-slot local-age transition: reset to 1 with probability
/// `reset_from_one` when d = 1 and `reset_from_older` when d > 1,
/// otherwise d + 1.
struct LocalAgeKernel {
  double reset_from_one = 1.0;
  double reset_from_older = 1.0;

  static LocalAgeKernel bernoulli(double lambda) { return {lambda, lambda}; }
  static LocalAgeKernel markov(const MarkovArrivalParams& params) {
    return {params.lambda_busy, params.lambda_idle};
  }
};

/// Raised when the truncated filter would need ages above its cap.
class TruncationOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conditions `b` on this slot's observation, applies the local-age kernel and
/// renormalises. Computation is dense over ages 1..d_max; mass that would
/// leave that range raises TruncationOverflow rather than being folded.
[[nodiscard]] BeliefVector bayes_update_truncated(const BeliefVector& b,
                                                  const LocalAgeKernel& kernel, bool scheduled,
                                                  std::optional<Age> observation, Age d_max);

[[nodiscard]] inline BeliefVector bayes_update_truncated(const BeliefVector& b, double lambda,
                                                         bool scheduled,
                                                         std::optional<Age> observation,
                                                         Age d_max) {
  return bayes_update_truncated(b, LocalAgeKernel::bernoulli(lambda), scheduled, observation,
                                d_max);
}

// --- Two-state Markov arrivals -------------------------------------------

/// Arrival belief after m unobserved slots, starting from `omega`:
/// the m-fold application of omega -> omega*lambda_busy + (1-omega)*lambda_idle.
[[nodiscard]] double markov_t_m(double omega, Age m, const MarkovArrivalParams& params);

/// (k, m) together with the arrival belief for the slot right after the
/// observation: lambda_busy if k = 1 (an arrival preceded it), else lambda_idle.
struct MarkovBeliefState {
  Age k = 1;
  Age m = 1;
  double omega0 = 0.0;

  static MarkovBeliefState from(LocBelief z, const MarkovArrivalParams& params);
};

/// Exact posterior local-age distribution under Markov arrivals. Support is
/// ages 1..m plus age k+m.
[[nodiscard]] BeliefVector markov_belief_vector(Age k, Age m, const MarkovArrivalParams& params);

[[nodiscard]] double markov_expected_local_age(Age k, Age m, const MarkovArrivalParams& params);

/// Markov analogue of the max-weight index: (k+m) - E[d].
[[nodiscard]] double markov_index_term(Age k, Age m, const MarkovArrivalParams& params);

}  // namespace aoisched
