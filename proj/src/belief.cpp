#include "aoisched/belief.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aoisched {

namespace {

void require_positive(Age k, Age m) {
  if (k < 1 || m < 1) throw InvalidParameter("belief statistics k and m must be >= 1");
}

void require_rate(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw InvalidParameter("arrival rate must lie in (0,1]");
  }
}

}  // namespace

BeliefVector::BeliefVector(std::vector<BeliefEntry> entries) : entries_(std::move(entries)) {}

BeliefVector BeliefVector::point_mass(Age age) { return BeliefVector({{age, 1.0}}); }

double BeliefVector::at(Age age) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), age,
                             [](const BeliefEntry& e, Age a) { return e.age < a; });
  return (it != entries_.end() && it->age == age) ? it->prob : 0.0;
}

double BeliefVector::total() const noexcept {
  double s = 0.0;
  for (const auto& e : entries_) s += e.prob;
  return s;
}

double BeliefVector::mean() const noexcept {
  double s = 0.0;
  for (const auto& e : entries_) s += e.prob * static_cast<double>(e.age);
  return s;
}

Age BeliefVector::max_age() const noexcept { return entries_.empty() ? 0 : entries_.back().age; }

void BeliefVector::validate(double tol) const {
  Age prev = 0;
  for (const auto& e : entries_) {
    if (e.age <= prev) throw ConsistencyError("belief ages must increase strictly from 1");
    if (!(e.prob >= 0.0)) throw ConsistencyError("belief probabilities must be non-negative");
    prev = e.age;
  }
  if (std::abs(total() - 1.0) > tol) {
    std::ostringstream os;
    os << "belief mass " << total() << " is not normalised";
    throw ConsistencyError(os.str());
  }
}

double max_abs_difference(const BeliefVector& a, const BeliefVector& b) {
  double worst = 0.0;
  for (const auto& e : a.entries()) worst = std::max(worst, std::abs(e.prob - b.at(e.age)));
  for (const auto& e : b.entries()) worst = std::max(worst, std::abs(e.prob - a.at(e.age)));
  return worst;
}

BeliefVector belief_vector(Age k, Age m, double lambda) {
  require_positive(k, m);
  require_rate(lambda);
  const double gamma = 1.0 - lambda;
  std::vector<BeliefEntry> entries;
  entries.reserve(m + 1);
  double survive = 1.0;  // gamma^(j-1)
  for (Age j = 1; j <= m; ++j) {
    entries.push_back({j, lambda * survive});
    survive *= gamma;
  }
  entries.push_back({k + m, survive});
  return BeliefVector(std::move(entries));
}

double expected_local_age(Age k, Age m, double lambda) {
  require_positive(k, m);
  require_rate(lambda);
  const double inv = 1.0 / lambda;
  return inv + (static_cast<double>(k) - inv) * std::pow(1.0 - lambda, static_cast<double>(m));
}

double pomw_index_term(Age k, Age m, double lambda) {
  require_positive(k, m);
  require_rate(lambda);
  const double decay = std::pow(1.0 - lambda, static_cast<double>(m));
  return static_cast<double>(m) + (1.0 - decay) * (static_cast<double>(k) - 1.0 / lambda);
}

LocBelief update_loc_belief(LocBelief z, bool scheduled, std::optional<Age> observation) {
  if (!observation) return {z.k, z.m + 1};
  if (!scheduled) throw ConsistencyError("observation reported for an unscheduled node");
  const Age obs = *observation;
  if (obs < 1 || (obs > z.m && obs != z.k + z.m)) {
    std::ostringstream os;
    os << "observed local age " << obs << " is impossible under belief (k=" << z.k
       << ", m=" << z.m << ")";
    throw ConsistencyError(os.str());
  }
  return {obs, 1};
}

BeliefVector bayes_update_truncated(const BeliefVector& b, const LocalAgeKernel& kernel,
                                    bool scheduled, std::optional<Age> observation,
                                    Age d_max) {
  if (d_max < 2) throw InvalidParameter("d_max must be at least 2");
  if (observation && !scheduled) {
    throw ConsistencyError("observation reported for an unscheduled node");
  }
  // dense[a] holds the probability of local age a; index 0 unused.
  std::vector<double> prior(d_max + 1, 0.0);
  for (const auto& e : b.entries()) {
    if (e.age < 1 || e.age > d_max) {
      throw TruncationOverflow("belief carries mass outside [1, d_max]");
    }
    prior[e.age] = e.prob;
  }

  // Observation likelihood. A failed or absent transmission has the same
  // likelihood for every age, so only a delivered observation conditions.
  if (observation) {
    const Age obs = *observation;
    for (Age a = 1; a <= d_max; ++a) {
      if (a != obs) prior[a] = 0.0;
    }
  }

  std::vector<double> next(d_max + 1, 0.0);
  for (Age a = 1; a <= d_max; ++a) {
    const double mass = prior[a];
    if (mass == 0.0) continue;
    const double reset = (a == 1) ? kernel.reset_from_one : kernel.reset_from_older;
    next[1] += mass * reset;
    const double stay = mass * (1.0 - reset);
    if (stay != 0.0) {
      if (a + 1 > d_max) throw TruncationOverflow("local age exceeds d_max after transition");
      next[a + 1] += stay;
    }
  }

  double norm = 0.0;
  for (Age a = 1; a <= d_max; ++a) norm += next[a];
  if (!(norm > 0.0)) throw ConsistencyError("observation has zero likelihood under the belief");

  std::vector<BeliefEntry> out;
  for (Age a = 1; a <= d_max; ++a) {
    if (next[a] != 0.0) out.push_back({a, next[a] / norm});
  }
  return BeliefVector(std::move(out));
}

double markov_t_m(double omega, Age m, const MarkovArrivalParams& params) {
  const double denom = 1.0 + params.lambda_idle - params.lambda_busy;
  if (denom == 0.0) return omega;  // lambda_idle = 0, lambda_busy = 1: both states absorbing
  const double fixed = params.lambda_idle / denom;
  const double ratio = params.lambda_busy - params.lambda_idle;
  return fixed + std::pow(ratio, static_cast<double>(m)) * (omega - fixed);
}

MarkovBeliefState MarkovBeliefState::from(LocBelief z, const MarkovArrivalParams& params) {
  return {z.k, z.m, z.k == 1 ? params.lambda_busy : params.lambda_idle};
}

BeliefVector markov_belief_vector(Age k, Age m, const MarkovArrivalParams& params) {
  require_positive(k, m);
  const auto state = MarkovBeliefState::from({k, m}, params);
  const double gamma_busy = params.gamma_busy();
  const double gamma_idle = params.gamma_idle();

  // Age j <= m means an arrival j slots back followed by j-1 empty slots:
  // the first empty slot follows an arrival, the rest follow empty slots.
  std::vector<BeliefEntry> entries;
  entries.reserve(m + 1);
  entries.push_back({1, markov_t_m(state.omega0, m - 1, params)});
  double run = gamma_busy;  // gamma_busy * gamma_idle^(j-2)
  for (Age j = 2; j <= m; ++j) {
    entries.push_back({j, markov_t_m(state.omega0, m - j, params) * run});
    run *= gamma_idle;
  }
  // No arrival in any of the m slots since the observation.
  double silent = 1.0 - state.omega0;
  for (Age j = 1; j < m; ++j) silent *= gamma_idle;
  entries.push_back({k + m, silent});
  return BeliefVector(std::move(entries));
}

double markov_expected_local_age(Age k, Age m, const MarkovArrivalParams& params) {
  return markov_belief_vector(k, m, params).mean();
}

double markov_index_term(Age k, Age m, const MarkovArrivalParams& params) {
  return static_cast<double>(k + m) - markov_expected_local_age(k, m, params);
}

}  // namespace aoisched
