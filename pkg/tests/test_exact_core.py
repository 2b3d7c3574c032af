import json
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from biharm.exact.derivation import DerivationTable
from biharm.exact.elim import PROPORTIONAL, coefficient_of, eliminate_pair, reduce_by
from biharm.exact.poly import (MINUS_INFINITY, ExponentOverflow, MissingAssignment, Ring,
                               UnregisteredSymbol, eval_exact, jet, leading_coefficient,
                               normalize, param)
from biharm.exact.rational import as_rational, format_rational
from biharm.elimination import transcribed as tr

RING = Ring([jet("x"), jet("y"), jet("z"), param("n")])


def curve():
    ring = tr.curve_ring()
    return ring, DerivationTable(ring, {"phi": tr.phi_derivative(), "psi": tr.psi_derivative()})


# -- rationals ------------------------------------------------------------------

def test_rational_is_reduced_with_positive_denominator():
    q = as_rational("6/-4")
    assert (q.numerator, q.denominator) == (-3, 2)
    assert format_rational(0) == "0/1"


def test_rational_rejects_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(ZeroDivisionError):
        as_rational("1/0")


# -- normalize ------------------------------------------------------------------

def test_normalize_reduces_coefficients():
    p = normalize(RING, [("2/4", {"x": 1})])
    assert p == RING.var("x").scale(mpq(1, 2))


def test_normalize_merges_terms():
    assert normalize(RING, [(1, {"x": 1}), (1, {"x": 1})]) == 2 * RING.var("x")


def test_normalize_drops_cancelled_terms():
    assert not normalize(RING, [(3, {"y": 2}), (-3, {"y": 2})])


def test_difference_of_squares():
    ring = tr.curve_ring()
    l, phi = ring.vars("lambda1", "phi")
    assert (l + phi) * (l - phi) == l ** 2 - phi ** 2


def test_exponent_overflow_is_an_error():
    with pytest.raises(ExponentOverflow):
        RING.var("x") ** 70000


# -- derive ---------------------------------------------------------------------

def test_derive_phi():
    ring, d = curve()
    l, phi, psi = ring.vars("lambda1", "phi", "psi")
    assert d(phi) == l * phi ** 2 + l + phi * psi


def test_derive_parameter_is_zero():
    ring, d = curve()
    assert not d(ring.var("c"))


def test_derive_product():
    ring, d = curve()
    l, phi, psi, c = ring.vars("lambda1", "phi", "psi", "c")
    expected = 2 * l * phi ** 2 * psi + l * psi + 2 * phi * psi ** 2 + c * phi
    assert d(phi * psi) == expected


def test_derive_unregistered_symbol_names_it():
    ring = Ring([jet("a"), param("k")])
    table = DerivationTable(ring)
    with pytest.raises(UnregisteredSymbol) as info:
        table(ring.var("a"))
    assert "'a'" in str(info.value)


def test_rule_with_foreign_symbol_is_rejected():
    with pytest.raises(UnregisteredSymbol):
        DerivationTable(Ring([jet("a")]), {"a": Ring([jet("b")]).var("b")})


def test_default_rule_is_the_jet_successor():
    ring = Ring([jet("f"), jet("f1", 1, "f"), jet("f2", 2, "f")])
    table = DerivationTable(ring)
    assert table(ring.var("f") ** 2) == 2 * ring.var("f") * ring.var("f1")


# -- leading coefficient --------------------------------------------------------

def test_leading_coefficient_of_constant():
    ring = tr.curve_ring()
    assert leading_coefficient(ring.const(5), "lambda1") == (ring.const(5), 0)


def test_leading_coefficient_of_zero_is_minus_infinity():
    ring = tr.curve_ring()
    lc, deg = leading_coefficient(ring.zero(), "lambda1")
    assert deg == MINUS_INFINITY and not lc


def test_leading_coefficient_q3():
    ring = tr.curve_ring()
    lc, deg = leading_coefficient(tr.PQ_table()["Q3"], "lambda1")
    assert (lc, deg) == (ring.const(-11664), 7)


# -- evaluation -----------------------------------------------------------------

def test_eval_difference():
    ring = Ring([jet("u1"), jet("u2")])
    assert eval_exact(ring.var("u2") - ring.var("u1"), {"u1": 1, "u2": 2}) == 1


def test_eval_a1():
    assert eval_exact(tr.a_table()["a1"], {"n": 6, "c": 0, "R": 1}) == -105


def test_eval_printed_top_coefficient_at_five_is_negative():
    v = eval_exact(tr.printed_top_coefficient(), {"n": 5})
    assert v < 0 and v.denominator == 1


def test_eval_missing_assignment_names_symbol():
    with pytest.raises(MissingAssignment) as info:
        eval_exact(RING.var("x") + RING.var("y"), {"x": 1})
    assert "'y'" in str(info.value)


# -- elimination ----------------------------------------------------------------

def test_eliminate_proportional_inputs_is_flagged():
    x = RING.var("x")
    flags = []
    assert not eliminate_pair(x - 1, x - 1, "x", flags)
    assert flags == [PROPORTIONAL]


def test_eliminate_absent_target_is_an_error():
    with pytest.raises(ValueError):
        eliminate_pair(RING.var("x"), RING.var("y"), "z")


def test_eliminate_psi_squared_gives_printed_4_20():
    out = eliminate_pair(tr.psi_quadratic_P(), tr.psi_quadratic_Q(), {"psi": 2})
    assert not coefficient_of(out, {"psi": 2})
    assert out == tr.psi_linear()


def test_reduce_by_exact_rewrite():
    x, y = RING.vars("x", "y")
    out, mult = reduce_by(x ** 3 + y, 2 * x - y, "x")
    assert mult == RING.one()
    assert out == y ** 3 * mpq(1, 8) + y


def test_reduce_by_pseudo_rewrite_tracks_multiplier():
    x, y, z = RING.vars("x", "y", "z")
    rel = y * x - z
    out, mult = reduce_by(x ** 2, rel, "x")
    assert mult == y ** 2 and out == z ** 2


# -- serialization --------------------------------------------------------------

def test_json_roundtrip_and_canonical_order():
    x, y, n = RING.vars("x", "y", "n")
    p = 3 * x * y - n + mpq(1, 2) * y ** 3
    data = p.to_json()
    assert RING.from_json(data) == p
    assert [sum(t["exps"].values()) for t in data] == [3, 2, 1]
    q = mpq(1, 2) * y ** 3 - n + 3 * x * y
    assert json.dumps(q.to_json()) == json.dumps(data)


# -- properties -----------------------------------------------------------------

coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7)
monos = st.fixed_dictionaries({s: st.integers(0, 3) for s in ("x", "y", "z", "n")})
polys = st.lists(st.tuples(coeffs, monos), max_size=6).map(lambda ts: normalize(RING, ts))
points = st.fixed_dictionaries({s: st.fractions(min_value=-9, max_value=9, max_denominator=5)
                                for s in ("x", "y", "z", "n")})
TABLE = DerivationTable(RING, {"x": RING.var("y") ** 2 + RING.var("n"),
                               "y": RING.var("x") * RING.var("z"), "z": RING.const(3)})


@settings(max_examples=100, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p and p * q == q * p
    assert p * (q + r) == p * q + p * r


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_leibniz_and_additivity(p, q):
    assert not TABLE(p * q) - TABLE(p) * q - p * TABLE(q)
    assert TABLE(p + q) == TABLE(p) + TABLE(q)


@settings(max_examples=100, deadline=None)
@given(polys, polys, points)
def test_evaluation_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@settings(max_examples=300, deadline=None)
@given(polys)
def test_normalize_is_idempotent(p):
    once = normalize(RING, [(c, dict(e)) for c, e in p.terms()])
    twice = normalize(RING, [(c, dict(e)) for c, e in once.terms()])
    assert json.dumps(once.to_json()) == json.dumps(twice.to_json()) == json.dumps(p.to_json())


def _random_poly(rng):
    terms = []
    for _ in range(rng.randint(0, 6)):
        exps = {s: rng.randint(0, 3) for s in ("x", "y", "z", "n")}
        terms.append((mpq(rng.randint(-20, 20), rng.randint(1, 7)), exps))
    return normalize(RING, terms)


def _random_point(rng):
    return {s: mpq(rng.randint(-9, 9), rng.randint(1, 5)) for s in ("x", "y", "z", "n")}


def test_properties_on_a_thousand_seeded_samples():
    rng = random.Random(7)
    for _ in range(1000):
        p, q, r = (_random_poly(rng) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert not TABLE(p * q) - TABLE(p) * q - p * TABLE(q)
        pt = _random_point(rng)
        assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
        assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
