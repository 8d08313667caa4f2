#include "aoisched/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace aoisched {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_ap_view(std::span<const Age> ap_aoi, std::span<const Age> truth) {
  for (std::size_t i = 0; i < ap_aoi.size(); ++i) {
    if (ap_aoi[i] != truth[i]) {
      std::ostringstream os;
      os << "AP-side AoI of node " << i << " (" << ap_aoi[i] << ") differs from ground truth ("
         << truth[i] << ")";
      throw ConsistencyError(os.str());
    }
  }
}

std::vector<NodeParams> effective_nodes(const ExperimentConfig& config, UniformStream& uniform) {
  std::vector<NodeParams> nodes = config.nodes;
  if (config.randomize) {
    const auto& r = *config.randomize;
    for (auto& node : nodes) {
      node.omega = r.omega_lo + (r.omega_hi - r.omega_lo) * uniform();
      node.p = r.p_lo + (r.p_hi - r.p_lo) * uniform();
    }
  }
  return resolve_weights(config.policy, std::move(nodes));
}

}  // namespace

void ExperimentConfig::validate() const {
  aoisched::validate(nodes);
  if (horizon < 1) throw InvalidParameter("horizon must be at least 1 slot");
  if (runs < 1) throw InvalidParameter("runs must be at least 1");
  if (arrivals.kind == ArrivalKind::Markov) {
    if (arrivals.markov.size() != nodes.size()) {
      throw InvalidParameter("Markov arrivals need one chain per node");
    }
    for (const auto& chain : arrivals.markov) chain.validate();
  }
  if (policy.weights == WeightPreset::Explicit && policy.beta.size() != nodes.size()) {
    throw InvalidParameter("beta must have one entry per node");
  }
  if (policy.kind == PolicyKind::Rs && policy.mu_preset == MuPreset::Explicit) {
    validate_rs_probabilities(policy.mu, nodes.size());
  }
  if (randomize) {
    const auto& r = *randomize;
    if (!(r.omega_lo > 0.0 && r.omega_hi >= r.omega_lo)) {
      throw InvalidParameter("omega range must be positive and ordered");
    }
    if (!(r.p_lo > 0.0 && r.p_hi >= r.p_lo && r.p_hi <= 1.0)) {
      throw InvalidParameter("p range must lie in (0,1] and be ordered");
    }
  }
}

std::uint64_t run_seed(std::uint64_t base_seed, std::uint64_t run_index) noexcept {
  return splitmix64(splitmix64(base_seed) ^ splitmix64(run_index + 0x632be59bd9b4e019ULL));
}

EpisodeResult run_episode(const ExperimentConfig& config, std::uint64_t run_index,
                          const SlotObserver& observer) {
  UniformStream uniform(run_seed(config.base_seed, run_index));
  EpisodeResult result;
  result.nodes = effective_nodes(config, uniform);
  const auto& nodes = result.nodes;
  const std::size_t n = nodes.size();

  auto policy = make_policy(config.policy, nodes, config.arrivals);
  const bool markov = config.arrivals.kind == ArrivalKind::Markov;

  auto truth = GroundTruthState::initial(n);
  std::vector<Age> ap_aoi(n, 1);
  std::vector<ArrivalProcessState> arrival_state(
      n, ArrivalProcessState{markov ? ArrivalKind::Markov : ArrivalKind::Bernoulli, true});
  std::vector<bool> arrived(n);

  auto draw_arrivals = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      const double u = uniform();
      const auto outcome = markov ? step_arrival(arrival_state[i], config.arrivals.markov[i], u)
                                  : step_arrival(arrival_state[i], nodes[i], u);
      arrival_state[i] = outcome.next;
      arrived[i] = outcome.arrival;
    }
  };

  // Slot 0: nothing is scheduled, only arrivals happen.
  draw_arrivals();
  for (std::size_t i = 0; i < n; ++i) {
    truth.aoi[i] = evolve_destination_aoi(truth.aoi[i], truth.local_age[i], false);
    truth.local_age[i] = evolve_local_age(truth.local_age[i], arrived[i]);
    ap_aoi[i] = truth.aoi[i];
  }

  result.mean_aoi.assign(n, 0.0);
  result.schedule_count.assign(n, 0);
  std::vector<double> aoi_sum(n, 0.0);
  double weighted_sum = 0.0;

  std::vector<Age> start_local, start_aoi, start_ap;
  const std::uint64_t last_slot = config.burn_in + config.horizon;
  for (std::uint64_t t = 1; t <= last_slot; ++t) {
    if (t > config.burn_in) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto d = static_cast<double>(truth.aoi[i]);
        weighted_sum += nodes[i].omega * d;
        aoi_sum[i] += d;
      }
    }
    if (observer) {
      start_local = truth.local_age;
      start_aoi = truth.aoi;
      start_ap = ap_aoi;
    }

    const double u_policy = policy->uses_random_draw() ? uniform() : 0.0;
    const ApView view{nodes, ap_aoi};
    const PrivilegedView hidden{truth.local_age};
    const Decision decision = policy->decide(view, policy->privileged() ? &hidden : nullptr,
                                             u_policy);
    if (decision.node && *decision.node >= n) {
      throw ConsistencyError("policy scheduled a node outside the network");
    }

    draw_arrivals();
    bool delivered = false;
    SlotFeedback fb{decision.node, std::nullopt};
    if (decision.node) {
      const std::size_t j = *decision.node;
      ++result.schedule_count[j];
      delivered = attempt_transmission(nodes[j].p, uniform());
      if (delivered) {
        fb.observation = truth.local_age[j];
        ++result.deliveries;
      }
    } else {
      ++result.idle_slots;
    }

    for (std::size_t i = 0; i < n; ++i) {
      const bool hit = delivered && decision.node == i;
      truth.aoi[i] = evolve_destination_aoi(truth.aoi[i], truth.local_age[i], hit);
      truth.local_age[i] = evolve_local_age(truth.local_age[i], arrived[i]);
      // The AP only learns from the observation.
      ap_aoi[i] = (decision.node == i && fb.observation) ? *fb.observation + 1 : ap_aoi[i] + 1;
    }
    policy->feedback(fb);

    truth.check();
    check_ap_view(ap_aoi, truth.aoi);
    policy->check_consistency(ap_aoi);

    if (observer) {
      observer(SlotRecord{t, nodes, start_local, start_aoi, start_ap, decision, fb, delivered,
                          policy.get()});
    }
  }

  const auto slots = static_cast<double>(config.horizon);
  result.ewsaoi = weighted_sum / (static_cast<double>(n) * slots);
  for (std::size_t i = 0; i < n; ++i) result.mean_aoi[i] = aoi_sum[i] / slots;
  return result;
}

RunMetrics aggregate_runs(std::span<const EpisodeResult> episodes) {
  RunMetrics m;
  if (episodes.empty()) return m;
  const auto r = static_cast<double>(episodes.size());
  double sum = 0.0;
  for (const auto& e : episodes) {
    m.per_run_values.push_back(e.ewsaoi);
    sum += e.ewsaoi;
  }
  m.ewsaoi_mean = sum / r;
  if (episodes.size() > 1) {
    double ss = 0.0;
    for (double v : m.per_run_values) ss += (v - m.ewsaoi_mean) * (v - m.ewsaoi_mean);
    m.ewsaoi_std = std::sqrt(ss / (r - 1.0));
  }
  m.ci95_halfwidth = 1.96 * m.ewsaoi_std / std::sqrt(r);

  m.per_node_mean_aoi.assign(episodes.front().mean_aoi.size(), 0.0);
  for (const auto& e : episodes) {
    for (std::size_t i = 0; i < e.mean_aoi.size(); ++i) m.per_node_mean_aoi[i] += e.mean_aoi[i];
  }
  for (auto& v : m.per_node_mean_aoi) v /= r;
  return m;
}

RunMetrics run_monte_carlo(const ExperimentConfig& config) {
  config.validate();
  std::vector<EpisodeResult> episodes(config.runs);
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(config.parallel, 1, config.runs));

  if (workers == 1) {
    for (std::uint64_t r = 0; r < config.runs; ++r) episodes[r] = run_episode(config, r);
    return aggregate_runs(episodes);
  }

  std::atomic<std::uint64_t> next{0};
  std::vector<std::exception_ptr> errors(config.runs);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t r = next++; r < config.runs; r = next++) {
          try {
            episodes[r] = run_episode(config, r);
          } catch (...) {
            errors[r] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return aggregate_runs(episodes);
}

}  // namespace aoisched
