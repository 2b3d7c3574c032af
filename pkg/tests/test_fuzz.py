import random

import pytest
from gmpy2 import mpq

from biharm.exact.certificate import run_comparison
from biharm.exact.poly import Ring, jet, param
from biharm.numeric.fuzz import (FuzzConfig, config_from_env, fuzz_certificate, sample_points,
                                 seed_from_env)

RING = Ring([jet("x"), jet("y"), param("n")])


def identity_cert():
    x, y, n = RING.vars("x", "y", "n")
    return run_comparison("square", "(x + y)^2 expanded",
                          lambda: ((x + y) ** 2 * n, n * x * x + 2 * n * x * y + n * y * y, ()),
                          guards=(n - 4,), up_to_multiple=False)


def test_config_validation():
    with pytest.raises(ValueError):
        FuzzConfig(trials=0)
    with pytest.raises(ValueError):
        FuzzConfig(bound=0)


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("BIHARM_SEED", "42")
    assert seed_from_env() == 42 and config_from_env().seed == 42
    monkeypatch.setenv("BIHARM_SEED", "x")
    with pytest.raises(ValueError):
        seed_from_env()
    monkeypatch.delenv("BIHARM_SEED")
    assert seed_from_env() == 20240611


def test_sample_points_avoid_guards():
    n = RING.var("n")
    pts = sample_points(random.Random(1), ["n"], [n - 1, n], 500, 1)
    assert all(p["n"] not in (0, 1) for p in pts)


def test_certified_identity_passes():
    rep = fuzz_certificate(identity_cert(), FuzzConfig(trials=1000))
    assert rep.passed
    assert rep.nonzero_hits == 0 and rep.mutations == rep.detected == 3
    assert rep.dual_points == 8 and rep.dual_mismatches == 0


def test_fuzz_is_deterministic():
    a = fuzz_certificate(identity_cert(), FuzzConfig(seed=3, trials=50)).as_dict()
    b = fuzz_certificate(identity_cert(), FuzzConfig(seed=3, trials=50)).as_dict()
    assert a == b


def test_false_certified_residual_is_a_hard_failure():
    from dataclasses import replace

    cert = identity_cert()
    x = RING.var("x")
    forged = replace(cert, status="discrepancy", residual=x * 0 + x)
    rep = fuzz_certificate(forged, FuzzConfig(trials=20))
    assert rep.nonzero_hits > 0 and not rep.passed


def test_certificate_4_5_and_its_mutation(case_a_by_name):
    rep = fuzz_certificate(case_a_by_name["4.5"], FuzzConfig(trials=1000))
    assert rep.passed and rep.nonzero_hits == 0
    assert rep.mutations > 0 and rep.detected == rep.mutations
    assert rep.mutated_float_worst < 1e-9
