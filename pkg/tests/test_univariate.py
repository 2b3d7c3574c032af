import random
from itertools import combinations

import pytest
from gmpy2 import mpq

from biharm.exact.derivation import DerivationTable
from biharm.exact.fraction import MonoFraction
from biharm.exact.poly import Ring, jet, param
from biharm.exact.univariate import (UPoly, interpolate, real_root_intervals, refine, resultant,
                                     sign_changes, sturm_sequence)


def from_roots(*roots):
    out = UPoly([1])
    for r in roots:
        out = out * UPoly([-mpq(r), 1])
    return out


def test_roots_of_a_product_are_isolated():
    u = from_roots(-3, mpq(1, 2), 2, 7) * UPoly([2, 0, 1])  # x^2 + 2 has no real root
    iv = real_root_intervals(u)
    assert len(iv) == 4
    for lo, hi in iv:
        if lo != hi:
            assert u(lo) * u(hi) < 0 or u(hi) == 0


def test_endpoints_are_never_roots():
    # 0 is exact; the root 1/3 would otherwise sit in an interval starting at 0
    u = from_roots(0, mpq(1, 3), -5, 9)
    for lo, hi in real_root_intervals(u):
        assert lo == hi or (u(lo) != 0 and u(hi) != 0 and u(lo) * u(hi) < 0)


def test_repeated_roots_count_once():
    assert len(real_root_intervals(from_roots(1, 1, 1, 2))) == 2


def test_no_real_roots():
    assert real_root_intervals(UPoly([1, 0, 1])) == []


def test_zero_polynomial_is_rejected():
    with pytest.raises(ValueError):
        real_root_intervals(UPoly([]))


def test_refine_shrinks_and_keeps_sign_change():
    u = UPoly([-2, 0, 1])
    (lo, hi), = [iv for iv in real_root_intervals(u) if iv[1] > 0]
    a, b = refine(u, lo, hi, mpq(1, 10 ** 12))
    assert b - a <= mpq(1, 10 ** 12)
    assert u(a) < 0 < u(b)
    assert abs(float(a) - 2 ** 0.5) < 1e-11


def test_sturm_count_matches_sign_changes_at_bounds():
    rng = random.Random(3)
    for _ in range(50):
        roots = [mpq(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(rng.randint(1, 6))]
        u = from_roots(*roots) * UPoly([rng.randint(1, 5), 0, 1])
        seq = sturm_sequence(u.squarefree_part())
        b = 1000
        count = sign_changes([p(-b) for p in seq]) - sign_changes([p(b) for p in seq])
        assert count == len(set(roots)) == len(real_root_intervals(u))


def test_resultant_is_product_over_roots():
    a, b = from_roots(1, 2), from_roots(3, -1)
    expected = 1
    for x in (1, 2):
        for y in (3, -1):
            expected *= x - y
    assert resultant(a, b) == expected
    assert resultant(a, from_roots(2, 5)) == 0


def test_interpolation_recovers_polynomial():
    u = UPoly([3, -1, 0, mpq(2, 5), 1])
    xs = list(range(5))
    assert interpolate(xs, [u(x) for x in xs]) == u


def test_monofraction_quotient_rule():
    ring = Ring([jet("x"), jet("y"), param("k")])
    x, y, k = ring.vars("x", "y", "k")
    table = DerivationTable(ring, {"x": y, "y": k * x})
    f = MonoFraction(y * y + k, ring.pack({"x": 2}))  # (y^2 + k) / x^2
    d = f.derive(table)
    pt = {"x": mpq(3, 2), "y": mpq(-2, 3), "k": mpq(5)}
    # (N/x^2)' = N'/x^2 - 2 N y / x^3
    num = (2 * y * k * x).evaluate(pt)
    expected = num / pt["x"] ** 2 - 2 * (y * y + k).evaluate(pt) * pt["y"] / pt["x"] ** 3
    assert d.evaluate(pt) == expected


def test_monofraction_cancels_common_monomials():
    ring = Ring([jet("x"), jet("y")])
    x, y = ring.vars("x", "y")
    f = MonoFraction(x * x * y + x ** 3, ring.pack({"x": 1}))
    assert f.is_polynomial() and f.as_poly() == x * y + x * x
