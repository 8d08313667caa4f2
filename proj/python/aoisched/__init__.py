"""Age-of-information scheduling under partial observation."""

from ._aoisched import (
    ConfigError,
    ConsistencyError,
    InvalidParameter,
    MarkovArrivalParams,
    NodeParams,
    belief_vector,
    bound_report,
    decide_fomw,
    decide_mwa,
    decide_pomw,
    decide_rr,
    decide_rs,
    expected_local_age,
    markov_belief_vector,
    markov_expected_local_age,
    markov_t_m,
    pomw_index_term,
    rs_ewsaoi,
    simulate,
    update_loc_belief,
)

__all__ = [name for name in dir() if not name.startswith("_")]
