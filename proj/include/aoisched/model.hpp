#pragma once

// Ground-truth dynamics of the slotted uplink: arrivals, local age,
// destination AoI and the error-prone channel.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aoisched {

/// Ages and slot counts are positive integers measured in slots.
using Age = std::uint64_t;

/// Raised when a caller supplies parameters outside their domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when the simulator or a policy detects an internal inconsistency
/// (belief desynchronised from the tracked AoI, impossible observation, ...).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Per-node parameters: arrival rate, channel success probability, AoI
/// weight and Lyapunov weight.
struct NodeParams {
  double lambda = 1.0;
  double p = 1.0;
  double omega = 1.0;
  double beta = 1.0;

  /// Throws InvalidParameter unless 0 < lambda <= 1, 0 < p <= 1,
  /// omega > 0 and beta > 0.
  void validate() const;
};

void validate(const std::vector<NodeParams>& nodes);

/// Two-state arrival chain. `lambda_idle` is Pr(arrival | no arrival in the
/// previous slot), `lambda_busy` is Pr(arrival | arrival in the previous
/// slot). The complements are derived on demand.
struct MarkovArrivalParams {
  double lambda_idle = 0.5;
  double lambda_busy = 0.5;

  [[nodiscard]] double gamma_idle() const noexcept { return 1.0 - lambda_idle; }
  [[nodiscard]] double gamma_busy() const noexcept { return 1.0 - lambda_busy; }

  /// Long-run arrival frequency of the chain. Returns lambda_idle when the
  /// chain is reducible with both states absorbing.
  [[nodiscard]] double stationary_rate() const noexcept;

  void validate() const;
};

enum class ArrivalKind { Bernoulli, Markov };

/// Arrival-process memory. For Bernoulli arrivals `last_arrival` is unused.
struct ArrivalProcessState {
  ArrivalKind kind = ArrivalKind::Bernoulli;
  bool last_arrival = true;
};

struct ArrivalOutcome {
  bool arrival = false;
  ArrivalProcessState next;
};

/// Bernoulli arrival: arrival iff u < lambda.
ArrivalOutcome step_arrival(ArrivalProcessState state, const NodeParams& params, double u);
/// Markov arrival: threshold lambda_busy after an arrival, lambda_idle otherwise.
ArrivalOutcome step_arrival(ArrivalProcessState state, const MarkovArrivalParams& params,
                            double u);

/// Arrival model of a whole network. `markov` holds one chain per node when
/// kind is Markov and is empty otherwise.
struct ArrivalModel {
  ArrivalKind kind = ArrivalKind::Bernoulli;
  std::vector<MarkovArrivalParams> markov;
};

/// Local age after one slot: 1 on arrival, otherwise d + 1.
[[nodiscard]] constexpr Age evolve_local_age(Age d, bool arrival) noexcept {
  return arrival ? Age{1} : d + 1;
}

/// Destination AoI after one slot. A delivery carries the packet of age d.
[[nodiscard]] constexpr Age evolve_destination_aoi(Age aoi, Age d, bool delivered) noexcept {
  return delivered ? d + 1 : aoi + 1;
}

[[nodiscard]] constexpr bool attempt_transmission(double p, double u) noexcept { return u < p; }

/// Hidden per-node state of the network.
struct GroundTruthState {
  std::vector<Age> local_age;
  std::vector<Age> aoi;

  /// d_0 = D_0 = 1 for every node.
  static GroundTruthState initial(std::size_t n);

  /// Throws ConsistencyError if some node has d < 1 or D < d.
  void check() const;
};

}  // namespace aoisched
