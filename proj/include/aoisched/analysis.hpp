#pragma once

// Closed-form performance of randomized scheduling, the upper bounds of the
// partially observable max-weight policy and the policy-independent lower
// bound. All functions are pure and read only lambda, p and omega from the
// node parameters.

#include <vector>

#include "aoisched/model.hpp"

namespace aoisched {

/// EWSAoI of stationary randomized scheduling:
/// (1/N) * sum_i omega_i * (1/lambda_i + 1/(p_i mu_i)).
[[nodiscard]] double rs_ewsaoi(const std::vector<NodeParams>& nodes, const std::vector<double>& mu);

struct OptimalRs {
  std::vector<double> mu;
  double ewsaoi = 0.0;
};

/// mu*_i proportional to sqrt(omega_i / p_i), with its closed-form EWSAoI.
[[nodiscard]] OptimalRs optimal_rs(const std::vector<NodeParams>& nodes);

struct PomwWeights {
  std::vector<double> mu_prime;
  std::vector<double> beta;
};

/// mu'_i proportional to sqrt(omega_i / (lambda_i p_i)) and the Lyapunov
/// weights beta_i = omega_i / (lambda_i mu'_i p_i) that go with it.
[[nodiscard]] PomwWeights pomw_weights(const std::vector<NodeParams>& nodes);

struct PomwUpperBound {
  double middle = 0.0;  ///< (1/N) sum omega_i (1/(lambda_i mu'_i p_i) + 1)
  double r_rsm = 0.0;   ///< rs_ewsaoi at mu_M
  std::vector<double> mu_m;
};

[[nodiscard]] PomwUpperBound pomw_upper_bound(const std::vector<NodeParams>& nodes);

struct LowerBound {
  std::vector<double> q;
  double value = 0.0;
};

/// Solves min sum omega_i / q_i s.t. sum q_i / p_i <= 1, 0 < q_i <= lambda_i
/// and returns L_B = (1/2N) sum omega_i (1/q*_i + 3).
[[nodiscard]] LowerBound universal_lower_bound(const std::vector<NodeParams>& nodes);

/// Ratio guarantee 2 / min_i lambda_i.
[[nodiscard]] double guarantee_ratio_bound(const std::vector<NodeParams>& nodes);

/// Lyapunov weights beta_i = omega_i / (lambda_i q*_i) built from the lower
/// bound solution.
[[nodiscard]] std::vector<double> lower_bound_weights(const std::vector<NodeParams>& nodes);

struct BoundReport {
  std::vector<double> mu_star;
  double r_rs_star = 0.0;
  std::vector<double> mu_prime;
  std::vector<double> mu_m;
  double pomw_middle_bound = 0.0;
  double r_rsm = 0.0;
  std::vector<double> q_star;
  double lower_bound = 0.0;
  double guarantee_bound = 0.0;
};

[[nodiscard]] BoundReport bound_report(const std::vector<NodeParams>& nodes);

}  // namespace aoisched
