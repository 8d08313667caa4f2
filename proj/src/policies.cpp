#include "aoisched/policies.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "aoisched/analysis.hpp"

namespace aoisched {

namespace {

// First index attaining the maximum score.
template <typename Score>
Decision argmax(std::size_t n, Score&& score) {
  if (n == 0) return {};
  std::size_t best = 0;
  double best_score = score(0);
  for (std::size_t i = 1; i < n; ++i) {
    const double s = score(i);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return {best};
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw InvalidParameter(std::string(what) + " must have one entry per node");
}

}  // namespace

Decision decide_pomw(std::span<const LocBelief> beliefs, std::span<const NodeParams> nodes) {
  require_same_size(beliefs.size(), nodes.size(), "beliefs");
  return argmax(nodes.size(), [&](std::size_t i) {
    return nodes[i].beta * nodes[i].p *
           pomw_index_term(beliefs[i].k, beliefs[i].m, nodes[i].lambda);
  });
}

Decision decide_fomw(std::span<const Age> local_age, std::span<const Age> aoi,
                     std::span<const NodeParams> nodes) {
  require_same_size(local_age.size(), nodes.size(), "local ages");
  require_same_size(aoi.size(), nodes.size(), "AoI values");
  return argmax(nodes.size(), [&](std::size_t i) {
    return nodes[i].beta * nodes[i].p * static_cast<double>(aoi[i] - local_age[i]);
  });
}

Decision decide_rs(std::span<const double> mu, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    cumulative += mu[i];
    if (u < cumulative) return {i};
  }
  return {};
}

Decision decide_rr(std::uint64_t counter, std::size_t n) {
  if (n == 0) throw InvalidParameter("round robin needs at least one node");
  return {static_cast<std::size_t>(counter % n)};
}

Decision decide_mwa(std::span<const Age> aoi, std::span<const NodeParams> nodes) {
  require_same_size(aoi.size(), nodes.size(), "AoI values");
  return argmax(nodes.size(), [&](std::size_t i) {
    return nodes[i].omega * nodes[i].p * static_cast<double>(aoi[i]);
  });
}

void validate_rs_probabilities(std::span<const double> mu, std::size_t n) {
  require_same_size(mu.size(), n, "mu");
  double total = 0.0;
  for (double m : mu) {
    if (!(m > 0.0 && m <= 1.0)) throw InvalidParameter("each mu_i must lie in (0,1]");
    total += m;
  }
  if (total > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "scheduling probabilities sum to " << total << " > 1";
    throw InvalidParameter(os.str());
  }
}

std::string_view to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::Pomw: return "POMW";
    case PolicyKind::Fomw: return "FOMW";
    case PolicyKind::Rs: return "RS";
    case PolicyKind::Rr: return "RR";
    case PolicyKind::Mwa: return "MWA";
  }
  return "?";
}

PolicyKind parse_policy_kind(std::string_view name) {
  const auto s = lower(name);
  if (s == "pomw") return PolicyKind::Pomw;
  if (s == "fomw") return PolicyKind::Fomw;
  if (s == "rs") return PolicyKind::Rs;
  if (s == "rr") return PolicyKind::Rr;
  if (s == "mwa") return PolicyKind::Mwa;
  throw InvalidParameter("unknown policy '" + std::string(name) +
                         "' (expected pomw, fomw, rs, rr or mwa)");
}

std::string_view to_string(WeightPreset preset) noexcept {
  switch (preset) {
    case WeightPreset::RsOptimal: return "rs_optimal";
    case WeightPreset::LowerBound: return "lower_bound";
    case WeightPreset::Unit: return "unit";
    case WeightPreset::Explicit: return "explicit";
  }
  return "?";
}

WeightPreset parse_weight_preset(std::string_view name) {
  const auto s = lower(name);
  if (s == "rs_optimal") return WeightPreset::RsOptimal;
  if (s == "lower_bound") return WeightPreset::LowerBound;
  if (s == "unit") return WeightPreset::Unit;
  throw InvalidParameter("unknown beta preset '" + std::string(name) +
                         "' (expected rs_optimal, lower_bound, unit or an array)");
}

std::string_view to_string(MuPreset preset) noexcept {
  switch (preset) {
    case MuPreset::Optimal: return "optimal";
    case MuPreset::Rsm: return "rsm";
    case MuPreset::Explicit: return "explicit";
  }
  return "?";
}

MuPreset parse_mu_preset(std::string_view name) {
  const auto s = lower(name);
  if (s == "optimal") return MuPreset::Optimal;
  if (s == "rsm") return MuPreset::Rsm;
  throw InvalidParameter("unknown mu preset '" + std::string(name) +
                         "' (expected optimal, rsm or an array)");
}

std::vector<NodeParams> resolve_weights(const PolicySpec& spec, std::vector<NodeParams> nodes) {
  std::vector<double> beta;
  switch (spec.weights) {
    case WeightPreset::RsOptimal: beta = pomw_weights(nodes).beta; break;
    case WeightPreset::LowerBound: beta = lower_bound_weights(nodes); break;
    case WeightPreset::Unit: beta.assign(nodes.size(), 1.0); break;
    case WeightPreset::Explicit:
      require_same_size(spec.beta.size(), nodes.size(), "beta");
      beta = spec.beta;
      break;
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].beta = beta[i];
  validate(nodes);
  return nodes;
}

std::vector<double> resolve_mu(const PolicySpec& spec, const std::vector<NodeParams>& nodes) {
  if (spec.kind != PolicyKind::Rs) return {};
  std::vector<double> mu;
  switch (spec.mu_preset) {
    case MuPreset::Optimal: mu = optimal_rs(nodes).mu; break;
    case MuPreset::Rsm: mu = pomw_upper_bound(nodes).mu_m; break;
    case MuPreset::Explicit: mu = spec.mu; break;
  }
  validate_rs_probabilities(mu, nodes.size());
  return mu;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const std::vector<NodeParams>& nodes,
                                    const ArrivalModel& arrivals) {
  switch (spec.kind) {
    case PolicyKind::Pomw:
      if (arrivals.kind == ArrivalKind::Markov) {
        return std::make_unique<MarkovPomwPolicy>(arrivals.markov);
      }
      return std::make_unique<PomwPolicy>(nodes.size());
    case PolicyKind::Fomw: return std::make_unique<FomwPolicy>();
    case PolicyKind::Rs: return std::make_unique<RsPolicy>(resolve_mu(spec, nodes));
    case PolicyKind::Rr: return std::make_unique<RrPolicy>();
    case PolicyKind::Mwa: return std::make_unique<MwaPolicy>();
  }
  throw InvalidParameter("unknown policy kind");
}

// --- POMW ---

namespace {

void apply_feedback(std::vector<LocBelief>& beliefs, const SlotFeedback& fb) {
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    const bool scheduled = fb.scheduled == i;
    beliefs[i] = update_loc_belief(beliefs[i], scheduled,
                                   scheduled ? fb.observation : std::optional<Age>{});
  }
}

void check_beliefs(std::span<const LocBelief> beliefs, std::span<const Age> ap_aoi) {
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    if (beliefs[i].implied_aoi() != ap_aoi[i]) {
      std::ostringstream os;
      os << "POMW belief for node " << i << " implies AoI " << beliefs[i].implied_aoi()
         << " but the AP tracks " << ap_aoi[i];
      throw ConsistencyError(os.str());
    }
  }
}

}  // namespace

PomwPolicy::PomwPolicy(std::size_t n) : beliefs_(n, LocBelief{1, 1}) {}

Decision PomwPolicy::decide(const ApView& view, const PrivilegedView*, double) {
  return decide_pomw(beliefs_, view.nodes);
}

void PomwPolicy::feedback(const SlotFeedback& fb) { apply_feedback(beliefs_, fb); }

void PomwPolicy::check_consistency(std::span<const Age> ap_aoi) const {
  check_beliefs(beliefs_, ap_aoi);
}

MarkovPomwPolicy::MarkovPomwPolicy(std::vector<MarkovArrivalParams> chains)
    : chains_(std::move(chains)), beliefs_(chains_.size(), LocBelief{1, 1}) {}

Decision MarkovPomwPolicy::decide(const ApView& view, const PrivilegedView*, double) {
  require_same_size(chains_.size(), view.nodes.size(), "Markov chains");
  return argmax(view.nodes.size(), [&](std::size_t i) {
    return view.nodes[i].beta * view.nodes[i].p *
           markov_index_term(beliefs_[i].k, beliefs_[i].m, chains_[i]);
  });
}

void MarkovPomwPolicy::feedback(const SlotFeedback& fb) { apply_feedback(beliefs_, fb); }

void MarkovPomwPolicy::check_consistency(std::span<const Age> ap_aoi) const {
  check_beliefs(beliefs_, ap_aoi);
}

// --- baselines ---

Decision FomwPolicy::decide(const ApView& view, const PrivilegedView* hidden, double) {
  if (hidden == nullptr) throw ConsistencyError("FOMW requires the privileged local-age view");
  return decide_fomw(hidden->local_age, view.aoi, view.nodes);
}

RsPolicy::RsPolicy(std::vector<double> mu) : mu_(std::move(mu)) {
  validate_rs_probabilities(mu_, mu_.size());
}

Decision RsPolicy::decide(const ApView&, const PrivilegedView*, double u) {
  return decide_rs(mu_, u);
}

Decision RrPolicy::decide(const ApView& view, const PrivilegedView*, double) {
  return decide_rr(counter_++, view.nodes.size());
}

Decision MwaPolicy::decide(const ApView& view, const PrivilegedView*, double) {
  return decide_mwa(view.aoi, view.nodes);
}

}  // namespace aoisched
