#pragma once

// Scheduling policies. Node indices are 0-based throughout the C++ API.
//
// The stateless decide_* functions implement each decision rule; the Policy
// classes wrap them with the state a policy carries across slots and are what
// the simulator drives.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aoisched/belief.hpp"
#include "aoisched/model.hpp"

namespace aoisched {

/// At most one node per slot; an empty decision idles the slot.
struct Decision {
  std::optional<std::size_t> node;

  [[nodiscard]] bool idle() const noexcept { return !node.has_value(); }
  friend bool operator==(const Decision&, const Decision&) = default;
};

/// argmax_i beta_i p_i G(k_i, m_i, lambda_i); ties go to the lowest index.
[[nodiscard]] Decision decide_pomw(std::span<const LocBelief> beliefs,
                                   std::span<const NodeParams> nodes);

/// argmax_i beta_i p_i (D_i - d_i) using the true local ages.
[[nodiscard]] Decision decide_fomw(std::span<const Age> local_age, std::span<const Age> aoi,
                                   std::span<const NodeParams> nodes);

/// Picks the node whose cumulative interval of [0,1) contains u; the residual
/// interval past sum(mu) idles.
[[nodiscard]] Decision decide_rs(std::span<const double> mu, double u);

/// Node counter mod n.
[[nodiscard]] Decision decide_rr(std::uint64_t counter, std::size_t n);

/// argmax_i omega_i p_i D_i.
[[nodiscard]] Decision decide_mwa(std::span<const Age> aoi, std::span<const NodeParams> nodes);

/// Throws InvalidParameter unless every mu_i is in (0,1] and the sum is at
/// most 1 + 1e-12.
void validate_rs_probabilities(std::span<const double> mu, std::size_t n);

// --- Stateful policies ------------------------------------------------------

/// What the access point knows at the start of a slot.
struct ApView {
  std::span<const NodeParams> nodes;
  std::span<const Age> aoi;
};

/// Hidden ground truth, handed only to policies that declare the privilege.
struct PrivilegedView {
  std::span<const Age> local_age;
};

/// Outcome of the slot as seen by the AP.
struct SlotFeedback {
  std::optional<std::size_t> scheduled;
  std::optional<Age> observation;  ///< local age carried by a delivered packet
};

class Policy {
 public:
  virtual ~Policy() = default;

  [[nodiscard]] virtual std::string_view name() const noexcept = 0;

  /// Whether decide() needs the true local ages.
  [[nodiscard]] virtual bool privileged() const noexcept { return false; }
  /// Whether decide() consumes the per-slot uniform draw.
  [[nodiscard]] virtual bool uses_random_draw() const noexcept { return false; }

  /// `hidden` is non-null only for privileged policies.
  virtual Decision decide(const ApView& view, const PrivilegedView* hidden, double u) = 0;

  virtual void feedback(const SlotFeedback& /*fb*/) {}

  /// Throws ConsistencyError if internal state disagrees with the AP's AoI.
  virtual void check_consistency(std::span<const Age> /*ap_aoi*/) const {}
};

enum class PolicyKind { Pomw, Fomw, Rs, Rr, Mwa };

[[nodiscard]] std::string_view to_string(PolicyKind kind) noexcept;
/// Accepts lower- or upper-case names; throws InvalidParameter otherwise.
[[nodiscard]] PolicyKind parse_policy_kind(std::string_view name);

/// How Lyapunov weights are chosen for the max-weight policies.
enum class WeightPreset {
  RsOptimal,   ///< beta_i = omega_i / (lambda_i mu'_i p_i)
  LowerBound,  ///< beta_i = omega_i / (lambda_i q*_i)
  Unit,        ///< beta_i = 1
  Explicit,
};

/// How the randomized policy's probabilities are chosen.
enum class MuPreset {
  Optimal,  ///< mu*
  Rsm,      ///< mu^M
  Explicit,
};

[[nodiscard]] std::string_view to_string(WeightPreset preset) noexcept;
[[nodiscard]] WeightPreset parse_weight_preset(std::string_view name);
[[nodiscard]] std::string_view to_string(MuPreset preset) noexcept;
[[nodiscard]] MuPreset parse_mu_preset(std::string_view name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::Pomw;
  WeightPreset weights = WeightPreset::RsOptimal;
  std::vector<double> beta;  ///< used with WeightPreset::Explicit
  MuPreset mu_preset = MuPreset::Optimal;
  std::vector<double> mu;  ///< used with MuPreset::Explicit
};

/// Returns a copy of `nodes` with beta filled in according to `spec`.
[[nodiscard]] std::vector<NodeParams> resolve_weights(const PolicySpec& spec,
                                                      std::vector<NodeParams> nodes);

/// Randomized-scheduling probabilities for `spec` (empty unless kind is Rs).
[[nodiscard]] std::vector<double> resolve_mu(const PolicySpec& spec,
                                             const std::vector<NodeParams>& nodes);

/// Builds a fresh policy instance for one run. `nodes` must already carry the
/// resolved weights. Markov arrivals switch POMW to the Markov belief.
[[nodiscard]] std::unique_ptr<Policy> make_policy(const PolicySpec& spec,
                                                  const std::vector<NodeParams>& nodes,
                                                  const ArrivalModel& arrivals);

/// Partially observable max-weight over the (k, m) statistic.
class PomwPolicy final : public Policy {
 public:
  explicit PomwPolicy(std::size_t n);

  [[nodiscard]] std::string_view name() const noexcept override { return "POMW"; }
  Decision decide(const ApView& view, const PrivilegedView* hidden, double u) override;
  void feedback(const SlotFeedback& fb) override;
  void check_consistency(std::span<const Age> ap_aoi) const override;

  [[nodiscard]] std::span<const LocBelief> beliefs() const noexcept { return beliefs_; }

 private:
  std::vector<LocBelief> beliefs_;
};

/// POMW with the Markov-arrival belief; index (k+m) - E[d].
class MarkovPomwPolicy final : public Policy {
 public:
  explicit MarkovPomwPolicy(std::vector<MarkovArrivalParams> chains);

  [[nodiscard]] std::string_view name() const noexcept override { return "POMW"; }
  Decision decide(const ApView& view, const PrivilegedView* hidden, double u) override;
  void feedback(const SlotFeedback& fb) override;
  void check_consistency(std::span<const Age> ap_aoi) const override;

  [[nodiscard]] std::span<const LocBelief> beliefs() const noexcept { return beliefs_; }

 private:
  std::vector<MarkovArrivalParams> chains_;
  std::vector<LocBelief> beliefs_;
};

class FomwPolicy final : public Policy {
 public:
  [[nodiscard]] std::string_view name() const noexcept override { return "FOMW"; }
  [[nodiscard]] bool privileged() const noexcept override { return true; }
  Decision decide(const ApView& view, const PrivilegedView* hidden, double u) override;
};

class RsPolicy final : public Policy {
 public:
  explicit RsPolicy(std::vector<double> mu);

  [[nodiscard]] std::string_view name() const noexcept override { return "RS"; }
  [[nodiscard]] bool uses_random_draw() const noexcept override { return true; }
  Decision decide(const ApView& view, const PrivilegedView* hidden, double u) override;

  [[nodiscard]] std::span<const double> mu() const noexcept { return mu_; }

 private:
  std::vector<double> mu_;
};

/// Round robin starting from node 0 in the first slot.
class RrPolicy final : public Policy {
 public:
  [[nodiscard]] std::string_view name() const noexcept override { return "RR"; }
  Decision decide(const ApView& view, const PrivilegedView* hidden, double u) override;

 private:
  std::uint64_t counter_ = 0;
};

class MwaPolicy final : public Policy {
 public:
  [[nodiscard]] std::string_view name() const noexcept override { return "MWA"; }
  Decision decide(const ApView& view, const PrivilegedView* hidden, double u) override;
};

}  // namespace aoisched
