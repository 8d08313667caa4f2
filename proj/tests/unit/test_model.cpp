#include "doctest.h"

#include "aoisched/model.hpp"

using namespace aoisched;

TEST_CASE("local age resets on arrival and grows otherwise") {
  CHECK(evolve_local_age(7, true) == 1);
  CHECK(evolve_local_age(7, false) == 8);
  CHECK(evolve_local_age(1, false) == 2);
}

TEST_CASE("destination AoI takes the delivered local age plus one") {
  CHECK(evolve_destination_aoi(10, 3, true) == 4);
  CHECK(evolve_destination_aoi(10, 3, false) == 11);
  CHECK(evolve_destination_aoi(4, 3, true) == 4);
}

TEST_CASE("transmission succeeds iff u < p") {
  CHECK(attempt_transmission(0.5, 0.49));
  CHECK_FALSE(attempt_transmission(0.5, 0.5));
  CHECK(attempt_transmission(1.0, 0.999999));
}

TEST_CASE("Bernoulli arrivals threshold on lambda") {
  ArrivalProcessState s;
  const NodeParams node{0.3, 1.0, 1.0, 1.0};
  CHECK(step_arrival(s, node, 0.29).arrival);
  CHECK_FALSE(step_arrival(s, node, 0.3).arrival);
}

TEST_CASE("Markov arrivals switch threshold on the previous outcome") {
  const MarkovArrivalParams chain{0.2, 0.9};
  ArrivalProcessState busy{ArrivalKind::Markov, true};
  ArrivalProcessState idle{ArrivalKind::Markov, false};
  CHECK(step_arrival(busy, chain, 0.5).arrival);
  CHECK_FALSE(step_arrival(idle, chain, 0.5).arrival);
  CHECK(step_arrival(idle, chain, 0.1).next.last_arrival);
  CHECK_FALSE(step_arrival(busy, chain, 0.95).next.last_arrival);
}

TEST_CASE("stationary rate of the arrival chain") {
  CHECK(MarkovArrivalParams{0.2, 0.6}.stationary_rate() == doctest::Approx(0.2 / 0.6));
  CHECK(MarkovArrivalParams{0.4, 0.4}.stationary_rate() == doctest::Approx(0.4));
}

TEST_CASE("parameter validation rejects out-of-domain values") {
  CHECK_THROWS_AS((NodeParams{0.0, 0.5, 1.0, 1.0}.validate()), InvalidParameter);
  CHECK_THROWS_AS((NodeParams{0.5, 1.5, 1.0, 1.0}.validate()), InvalidParameter);
  CHECK_THROWS_AS((NodeParams{0.5, 0.5, -1.0, 1.0}.validate()), InvalidParameter);
  CHECK_THROWS_AS((NodeParams{0.5, 0.5, 1.0, 0.0}.validate()), InvalidParameter);
  CHECK_NOTHROW((NodeParams{1.0, 1.0, 1.0, 1.0}.validate()));
  CHECK_THROWS_AS(validate(std::vector<NodeParams>{}), InvalidParameter);
  CHECK_THROWS_AS((MarkovArrivalParams{1.2, 0.5}.validate()), InvalidParameter);
}

TEST_CASE("ground truth starts at one and requires D >= d") {
  auto s = GroundTruthState::initial(3);
  CHECK(s.local_age == std::vector<Age>{1, 1, 1});
  CHECK(s.aoi == std::vector<Age>{1, 1, 1});
  s.aoi = {2, 2, 2};
  CHECK_NOTHROW(s.check());
  s.local_age[1] = 3;
  CHECK_THROWS_AS(s.check(), ConsistencyError);
}
