"""Smoke tests for the python bindings."""

from fractions import Fraction

import pytest

import sscover


def frac(d):
    return Fraction(d["exact"])


def test_generators_and_shapes():
    inst = sscover.gen_singleton_gap(4)
    assert inst.m == 5
    assert inst.q == 4
    assert inst.max_cost == 1

    hard = sscover.gen_edifice_hard(3, 2)
    assert hard.m == 19
    assert hard.q == 9


def test_oracle_is_exact():
    inst = sscover.gen_singleton_gap(4)
    assert frac(sscover.oracle_expected_cost(inst)) == 2
    assert frac(sscover.best_nonadaptive(inst)) == Fraction(7, 2)


def test_expected_coverage_exact():
    inst = sscover.gen_singleton_gap(6)
    assert frac(sscover.expected_coverage(inst, [0])) == 5
    assert frac(sscover.expected_coverage(inst, list(range(inst.m)))) == 6


def test_json_round_trip():
    inst = sscover.gen_random_setcover(n=6, m=4, seed=9)
    text = inst.to_json()
    again = sscover.loads_instance(text)
    assert again.to_json() == text


def test_verify_edifice_instance():
    inst = sscover.gen_edifice_hard(3, 2)
    report = sscover.verify_instance(inst, trials=500)
    assert report["feasible"]
    assert report["edifice_ok"]


def test_canonical_policy_mean():
    inst = sscover.gen_edifice_hard(3, 2)
    stats = sscover.run(inst, "canonical", trials=200, seed=7)
    assert stats["mean"] == 3.0
    assert stats["std"] == 0.0


def test_run_is_deterministic():
    inst = sscover.gen_singleton_gap(5)
    a = sscover.run(inst, "r-round", r=2, trials=50, seed=3)
    b = sscover.run(inst, "r-round", r=2, trials=50, seed=3)
    assert a["csv"] == b["csv"]


def test_lp_pipeline():
    inst = sscover.gen_random_setcover(n=5, m=4, max_support=3, seed=4)
    out = sscover.lp_solve(inst, check_w=True)
    assert out["w_feasible"]
    assert out["p_below_opt"]
    assert frac(out["p"]) <= frac(out["opt_cost"])


def test_capacity_error_surfaces():
    inst = sscover.gen_singleton_gap(9)
    with pytest.raises(sscover.CapacityError):
        sscover.best_nonadaptive(inst)
