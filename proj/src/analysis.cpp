#include "aoisched/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace aoisched {

namespace {

constexpr double kResidualTol = 1e-10;
constexpr double kQMin = 1e-12;

double throughput_load(const std::vector<NodeParams>& nodes, const std::vector<double>& q) {
  double load = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) load += q[i] / nodes[i].p;
  return load;
}

std::vector<double> rates_at(const std::vector<NodeParams>& nodes, double nu) {
  std::vector<double> q(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    q[i] = std::min(nodes[i].lambda, std::sqrt(nodes[i].omega * nodes[i].p / nu));
  }
  return q;
}

// With the capped set fixed, the uncapped rates follow from the tight budget
// exactly. Returns false if the resulting point disagrees with the caps.
bool polish_active_set(const std::vector<NodeParams>& nodes, std::vector<double>& q) {
  const std::size_t n = nodes.size();
  std::vector<bool> capped(n);
  double capped_load = 0.0;
  double free_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    capped[i] = q[i] >= nodes[i].lambda;
    if (capped[i]) {
      capped_load += nodes[i].lambda / nodes[i].p;
    } else {
      free_weight += std::sqrt(nodes[i].omega / nodes[i].p);
    }
  }
  const double budget = 1.0 - capped_load;
  if (free_weight == 0.0 || budget <= 0.0) return false;
  const double root_nu = free_weight / budget;
  std::vector<double> exact(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double unconstrained = std::sqrt(nodes[i].omega * nodes[i].p) / root_nu;
    if (capped[i]) {
      if (unconstrained < nodes[i].lambda * (1.0 - 1e-9)) return false;
      exact[i] = nodes[i].lambda;
    } else {
      if (unconstrained > nodes[i].lambda * (1.0 + 1e-9)) return false;
      exact[i] = std::min(unconstrained, nodes[i].lambda);
    }
  }
  q = std::move(exact);
  return true;
}

}  // namespace

double rs_ewsaoi(const std::vector<NodeParams>& nodes, const std::vector<double>& mu) {
  if (mu.size() != nodes.size()) throw InvalidParameter("mu must have one entry per node");
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(mu[i] > 0.0)) {
      throw InvalidParameter("randomized scheduling probability must be positive for every node");
    }
    total += nodes[i].omega * (1.0 / nodes[i].lambda + 1.0 / (nodes[i].p * mu[i]));
  }
  return total / static_cast<double>(nodes.size());
}

OptimalRs optimal_rs(const std::vector<NodeParams>& nodes) {
  validate(nodes);
  const auto n = static_cast<double>(nodes.size());
  double root_sum = 0.0;
  double inv_lambda = 0.0;
  for (const auto& node : nodes) {
    root_sum += std::sqrt(node.omega / node.p);
    inv_lambda += node.omega / node.lambda;
  }
  OptimalRs out;
  out.mu.reserve(nodes.size());
  for (const auto& node : nodes) out.mu.push_back(std::sqrt(node.omega / node.p) / root_sum);
  out.ewsaoi = (inv_lambda + root_sum * root_sum) / n;
  return out;
}

PomwWeights pomw_weights(const std::vector<NodeParams>& nodes) {
  validate(nodes);
  double root_sum = 0.0;
  for (const auto& node : nodes) root_sum += std::sqrt(node.omega / (node.lambda * node.p));
  PomwWeights out;
  for (const auto& node : nodes) {
    const double mu = std::sqrt(node.omega / (node.lambda * node.p)) / root_sum;
    out.mu_prime.push_back(mu);
    out.beta.push_back(node.omega / (node.lambda * mu * node.p));
  }
  return out;
}

PomwUpperBound pomw_upper_bound(const std::vector<NodeParams>& nodes) {
  const auto weights = pomw_weights(nodes);
  const auto n = static_cast<double>(nodes.size());
  double root_sum = 0.0;
  for (const auto& node : nodes) root_sum += std::sqrt(node.omega / (node.lambda * node.p));

  PomwUpperBound out;
  double middle = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    middle += node.omega * (1.0 / (node.lambda * weights.mu_prime[i] * node.p) + 1.0);
    out.mu_m.push_back(std::sqrt(node.omega * node.lambda / node.p) / root_sum);
  }
  out.middle = middle / n;
  out.r_rsm = rs_ewsaoi(nodes, out.mu_m);
  return out;
}

LowerBound universal_lower_bound(const std::vector<NodeParams>& nodes) {
  validate(nodes);
  std::vector<double> caps(nodes.size());
  std::transform(nodes.begin(), nodes.end(), caps.begin(),
                 [](const NodeParams& n) { return n.lambda; });

  std::vector<double> q;
  if (throughput_load(nodes, caps) <= 1.0) {
    q = caps;
  } else {
    // Load is decreasing in the multiplier; bisect in log space.
    double max_weight = 0.0;
    for (const auto& node : nodes) max_weight = std::max(max_weight, node.omega * node.p);
    double lo = std::log(std::numeric_limits<double>::min());
    double hi = std::log(max_weight / (kQMin * kQMin));
    q = rates_at(nodes, std::exp(hi));
    for (int iter = 0; iter < 400; ++iter) {
      const double mid = 0.5 * (lo + hi);
      q = rates_at(nodes, std::exp(mid));
      const double residual = throughput_load(nodes, q) - 1.0;
      if (std::abs(residual) <= kResidualTol) break;
      if (residual > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    polish_active_set(nodes, q);
  }

  LowerBound out;
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    total += nodes[i].omega * (1.0 / q[i] + 3.0);
  }
  out.value = total / (2.0 * static_cast<double>(nodes.size()));
  out.q = std::move(q);
  return out;
}

double guarantee_ratio_bound(const std::vector<NodeParams>& nodes) {
  validate(nodes);
  double lambda_min = 1.0;
  for (const auto& node : nodes) lambda_min = std::min(lambda_min, node.lambda);
  return 2.0 / lambda_min;
}

std::vector<double> lower_bound_weights(const std::vector<NodeParams>& nodes) {
  const auto lb = universal_lower_bound(nodes);
  std::vector<double> beta(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    beta[i] = nodes[i].omega / (nodes[i].lambda * lb.q[i]);
  }
  return beta;
}

BoundReport bound_report(const std::vector<NodeParams>& nodes) {
  BoundReport r;
  auto rs = optimal_rs(nodes);
  r.mu_star = std::move(rs.mu);
  r.r_rs_star = rs.ewsaoi;
  r.mu_prime = pomw_weights(nodes).mu_prime;
  auto ub = pomw_upper_bound(nodes);
  r.mu_m = std::move(ub.mu_m);
  r.pomw_middle_bound = ub.middle;
  r.r_rsm = ub.r_rsm;
  auto lb = universal_lower_bound(nodes);
  r.q_star = std::move(lb.q);
  r.lower_bound = lb.value;
  r.guarantee_bound = guarantee_ratio_bound(nodes);
  return r;
}

}  // namespace aoisched
