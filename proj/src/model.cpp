#include "aoisched/model.hpp"

#include <cmath>
#include <sstream>

namespace aoisched {

namespace {

bool in_unit_open_closed(double x) { return std::isfinite(x) && x > 0.0 && x <= 1.0; }
bool in_unit_closed(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

void NodeParams::validate() const {
  if (!in_unit_open_closed(lambda)) {
    throw InvalidParameter("lambda must lie in (0,1], got " + std::to_string(lambda));
  }
  if (!in_unit_open_closed(p)) {
    throw InvalidParameter("p must lie in (0,1], got " + std::to_string(p));
  }
  if (!(std::isfinite(omega) && omega > 0.0)) {
    throw InvalidParameter("omega must be positive, got " + std::to_string(omega));
  }
  if (!(std::isfinite(beta) && beta > 0.0)) {
    throw InvalidParameter("beta must be positive, got " + std::to_string(beta));
  }
}

void validate(const std::vector<NodeParams>& nodes) {
  if (nodes.empty()) throw InvalidParameter("network needs at least one node");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    try {
      nodes[i].validate();
    } catch (const InvalidParameter& e) {
      std::ostringstream os;
      os << "node " << i << ": " << e.what();
      throw InvalidParameter(os.str());
    }
  }
}

double MarkovArrivalParams::stationary_rate() const noexcept {
  const double denom = 1.0 + lambda_idle - lambda_busy;
  if (denom <= 0.0) return lambda_idle;
  return lambda_idle / denom;
}

void MarkovArrivalParams::validate() const {
  if (!in_unit_closed(lambda_idle) || !in_unit_closed(lambda_busy)) {
    throw InvalidParameter("Markov arrival probabilities must lie in [0,1]");
  }
}

ArrivalOutcome step_arrival(ArrivalProcessState state, const NodeParams& params, double u) {
  const bool arrival = u < params.lambda;
  return {arrival, state};
}

ArrivalOutcome step_arrival(ArrivalProcessState state, const MarkovArrivalParams& params,
                            double u) {
  const double threshold = state.last_arrival ? params.lambda_busy : params.lambda_idle;
  const bool arrival = u < threshold;
  state.last_arrival = arrival;
  return {arrival, state};
}

GroundTruthState GroundTruthState::initial(std::size_t n) {
  return GroundTruthState{std::vector<Age>(n, 1), std::vector<Age>(n, 1)};
}

void GroundTruthState::check() const {
  for (std::size_t i = 0; i < local_age.size(); ++i) {
    if (local_age[i] < 1 || aoi[i] < local_age[i]) {
      std::ostringstream os;
      os << "node " << i << " violates D >= d >= 1 (d=" << local_age[i] << ", D=" << aoi[i]
         << ")";
      throw ConsistencyError(os.str());
    }
  }
}

}  // namespace aoisched
