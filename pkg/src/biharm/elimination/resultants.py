"""Resultants for the branch eliminations.

Small eliminations use the Sylvester determinant, expanded by fraction-free
Gaussian elimination (Bareiss) over the polynomial ring.  The last
elimination of each branch is done by evaluation: the two relations are
specialised at many rational values of ``lambda1``, the univariate
resultants are computed over Q and the polynomial in ``lambda1`` is
recovered by interpolation.
"""

from gmpy2 import mpq

from ..exact.poly import FIELD, Poly
from ..exact.univariate import UPoly, interpolate, resultant


def sylvester(a, b, x):
    """Sylvester matrix of ``a`` and ``b`` as polynomials in ``x``."""
    ca = a.coefficients_in(x)
    cb = b.coefficients_in(x)
    m, n = max(ca), max(cb)
    z = a.ring.zero()
    rows = []
    for i in range(n):
        row = [z] * (m + n)
        for e, c in ca.items():
            row[i + m - e] = c
        rows.append(row)
    for i in range(m):
        row = [z] * (m + n)
        for e, c in cb.items():
            row[i + n - e] = c
        rows.append(row)
    return rows


def det_bareiss(matrix):
    """Determinant of a square matrix of polynomials, with exact divisions only."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    ring = a[0][0].ring
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).divexact(prev)
            a[i][k] = ring.zero()
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def resultant_in(a, b, x):
    """Resultant of two polynomials with respect to the symbol ``x``."""
    if a.degree(x) <= 0 or b.degree(x) <= 0:
        raise ValueError(f"both inputs must involve {x}")
    return det_bareiss(sylvester(a, b, x))


def halve(p, name):
    """Rewrite ``p``, even in ``name``, through ``name^2 -> name``."""
    ring = p.ring
    sh = ring.shift[ring.index[name]]
    out = {}
    for k, c in p.items():
        e = (k >> sh) & FIELD
        if e % 2:
            raise ValueError(f"odd power of {name}")
        out[k - ((e // 2) << sh)] = c
    return Poly(ring, out)


def parity(p, name):
    """The set of exponent parities of ``name`` in ``p``."""
    ring = p.ring
    sh = ring.shift[ring.index[name]]
    return {((k >> sh) & FIELD) % 2 for k in p.keys()}


def strip_known(p, factors):
    """Divide out each factor as often as it divides; returns ``(rest, powers)``."""
    powers = []
    cur = p
    for f in factors:
        m, cur = cur.multiplicity_of(f)
        powers.append(m)
    return cur, powers


def strip_monomial(p):
    key = p.monomial_content()
    return (p.shift_down(key) if key else p), key


def to_upoly(p, x, assignment):
    """Specialise every symbol but ``x`` and return the univariate result."""
    return UPoly.from_poly(p.specialize(assignment), x)


def lambda_resultant(a, b, x, point, lam="lambda1", degree_bound=None, extra_points=4,
                     start=None):
    """``Res_x(a, b)`` as a univariate polynomial in ``lam``, by interpolation.

    ``point`` fixes every other symbol.  Nodes where either leading
    coefficient in ``x`` vanishes are skipped.  ``extra_points`` additional
    nodes confirm the interpolant.
    """
    a = a.specialize(point)
    b = b.specialize(point)
    if degree_bound is None:
        degree_bound = bezout_bound(a, b, x, lam)
    la, da = a.leading_coefficient(x)
    lb, db = b.leading_coefficient(x)
    xs, ys = [], []
    k = start if start is not None else 1
    need = degree_bound + 1 + extra_points
    while len(xs) < need:
        node = mpq(k, 1) if k % 2 else mpq(-k, 3)
        k += 1
        if not la.evaluate({lam: node}) or not lb.evaluate({lam: node}):
            continue
        ua = UPoly.from_poly(a.specialize({lam: node}), x)
        ub = UPoly.from_poly(b.specialize({lam: node}), x)
        xs.append(node)
        ys.append(resultant(ua, ub))
    fit = interpolate(xs[:degree_bound + 1], ys[:degree_bound + 1])
    for node, val in zip(xs[degree_bound + 1:], ys[degree_bound + 1:]):
        if fit(node) != val:
            raise AssertionError("interpolant failed a confirmation node")
    return fit


def bezout_bound(a, b, x, lam):
    """``deg_x(b) * deg_lam(a) + deg_x(a) * deg_lam(b)``; bounds ``deg_lam Res_x``."""
    return b.degree(x) * max(a.degree(lam), 0) + a.degree(x) * max(b.degree(lam), 0)
