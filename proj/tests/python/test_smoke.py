import json

import pytest

import aoisched


def test_belief_vector():
    assert aoisched.belief_vector(1, 2, 0.4) == pytest.approx([(1, 0.4), (2, 0.24), (3, 0.36)])
    assert aoisched.expected_local_age(2, 1, 0.4) == pytest.approx(0.4 + 3 * 0.6)


def test_loc_update_and_errors():
    assert aoisched.update_loc_belief(3, 4, True, 2) == (2, 1)
    assert aoisched.update_loc_belief(3, 4, False) == (3, 5)
    with pytest.raises(aoisched.ConsistencyError):
        aoisched.update_loc_belief(3, 4, True, 5)
    with pytest.raises(ValueError):
        aoisched.belief_vector(1, 1, 0.0)


def test_markov_belief():
    chain = aoisched.MarkovArrivalParams(0.2, 0.6)
    b = dict(aoisched.markov_belief_vector(2, 2, chain))
    assert b[1] == pytest.approx(0.28)
    assert aoisched.markov_expected_local_age(2, 2, chain) == pytest.approx(3.0)


def test_bounds():
    r = aoisched.bound_report([0.5, 0.5], [0.8, 0.8], [1.0, 1.0])
    assert r["r_rs_star"] == pytest.approx(4.5)
    assert r["lower_bound"] == pytest.approx(2.75)
    assert aoisched.rs_ewsaoi([0.5, 0.5], [0.8, 0.8], [1, 1], [0.5, 0.5]) == pytest.approx(4.5)


def test_decisions():
    nodes = [aoisched.NodeParams(0.5, 0.8), aoisched.NodeParams(0.5, 0.8)]
    assert aoisched.decide_pomw([(1, 1), (1, 3)], nodes) == 1
    assert aoisched.decide_fomw([1, 1], [4, 4], nodes) == 0
    assert aoisched.decide_mwa([2, 5], nodes) == 1
    assert aoisched.decide_rs([0.2, 0.3], 0.9) is None
    assert aoisched.decide_rr(5, 2) == 1


def test_simulate_is_deterministic():
    cfg = json.dumps({
        "network": {"N": 2, "lambda": 0.5, "p": 0.8},
        "policy": {"name": "rs", "mu": [0.5, 0.5]},
        "simulation": {"horizon": 20000, "runs": 4, "seed": 1},
    })
    a = aoisched.simulate(cfg)
    b = aoisched.simulate(cfg)
    assert a["csv"] == b["csv"]
    assert a["ewsaoi_mean"] == pytest.approx(4.5, rel=0.03)
    with pytest.raises(aoisched.ConfigError):
        aoisched.simulate("{}")
