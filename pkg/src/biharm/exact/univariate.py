"""Dense univariate polynomials over Q: Sturm sequences, resultants, interpolation.

Coefficients are stored low degree first, trailing zeros stripped.
"""

from gmpy2 import mpq

from .poly import FIELD, Poly
from .rational import as_rational


class UPoly:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        cs = [as_rational(x) for x in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.c = tuple(cs)

    @classmethod
    def from_poly(cls, p, name):
        """Convert a polynomial whose only symbol is ``name``."""
        extra = [s for s in p.symbols() if s != name]
        if extra:
            raise ValueError(f"not univariate in {name!r}: also has {extra}")
        if not p:
            return cls([])
        sh = p.ring.shift[p.ring.index_of(name)]
        deg = p.degree(name)
        coeffs = [mpq(0)] * (deg + 1)
        for k, v in p.items():
            coeffs[(k >> sh) & FIELD] = v
        return cls(coeffs)

    def to_poly(self, ring, name):
        x = ring.var(name)
        out = ring.zero()
        for c in reversed(self.c):
            out = out * x + c
        return out

    # -- basics ------------------------------------------------------------

    @property
    def degree(self):
        return len(self.c) - 1 if self.c else float("-inf")

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"UPoly({[str(x) for x in self.c]})"

    def lc(self):
        return self.c[-1] if self.c else mpq(0)

    def __call__(self, x):
        x = as_rational(x)
        acc = mpq(0)
        for c in reversed(self.c):
            acc = acc * x + c
        return acc

    def eval_float(self, x):
        acc = 0.0
        for c in reversed(self.c):
            acc = acc * x + float(c)
        return acc

    def __add__(self, o):
        n = max(len(self.c), len(o.c))
        a = self.c + (mpq(0),) * (n - len(self.c))
        b = o.c + (mpq(0),) * (n - len(o.c))
        return UPoly([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return UPoly([-x for x in self.c])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, UPoly):
            q = as_rational(o)
            return UPoly([x * q for x in self.c])
        if not self.c or not o.c:
            return UPoly([])
        out = [mpq(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def deriv(self):
        return UPoly([c * i for i, c in enumerate(self.c)][1:])

    def divmod(self, d):
        if not d.c:
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.c)
        dl = d.c[-1]
        dd = len(d.c) - 1
        if len(r) - 1 < dd:
            return UPoly([]), self
        q = [mpq(0)] * (len(r) - dd)
        for i in range(len(r) - 1, dd - 1, -1):
            t = r[i] / dl
            if t:
                q[i - dd] = t
                for j, dc in enumerate(d.c):
                    r[i - dd + j] -= t * dc
        return UPoly(q), UPoly(r[:dd])

    def __mod__(self, d):
        return self.divmod(d)[1]

    def monic(self):
        return self * (1 / self.lc()) if self.c else self

    def primitive(self):
        """Positive multiple with coprime integer coefficients (sign of lc kept)."""
        if not self.c:
            return self
        from math import gcd

        den = 1
        for x in self.c:
            d = int(x.denominator)
            den = den * d // gcd(den, d)
        ints = [int(x * den) for x in self.c]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return UPoly([mpq(v, g) for v in ints])

    def gcd(self, o):
        a, b = self, o
        while b.c:
            a, b = b, (a % b).primitive()
        return a.monic() if a.c else a

    def squarefree_part(self):
        if self.degree <= 0:
            return self
        g = self.gcd(self.deriv())
        if g.degree <= 0:
            return self
        return self.divmod(g)[0]

    def multiplicity(self, factor):
        count = 0
        cur = self
        while cur.c:
            q, r = cur.divmod(factor)
            if r.c:
                break
            cur = q
            count += 1
        return count, cur


# -- Sturm sequences and root isolation -----------------------------------------

def sturm_sequence(p):
    seq = [p, p.deriv()]
    while seq[-1].c and seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if not r.c:
            break
        # a positive rescaling keeps the sign pattern of the classical sequence
        seq.append((-r).primitive())
    return seq


def sign_changes(values):
    signs = [v > 0 for v in values if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at_infinity(p, positive):
    if not p.c:
        return 0
    s = 1 if p.lc() > 0 else -1
    if not positive and p.degree % 2:
        s = -s
    return s


def sturm_count(seq, lo, hi):
    """Distinct real roots in the half-open interval (lo, hi]."""
    def at(x):
        if x == "inf":
            return sign_changes([_sign_at_infinity(p, True) for p in seq])
        if x == "-inf":
            return sign_changes([_sign_at_infinity(p, False) for p in seq])
        return sign_changes([p(x) for p in seq])
    return at(lo) - at(hi)


def cauchy_bound(p):
    lc = abs(p.lc())
    return 1 + max((abs(c) / lc for c in p.c[:-1]), default=mpq(0))


def real_root_intervals(p):
    """Isolate the distinct real roots of ``p`` with exact rational endpoints.

    Returns sorted ``(lo, hi)`` pairs; each half-open interval ``(lo, hi]``
    holds exactly one root, and ``lo == hi`` marks an exact rational root.
    Neither endpoint of a proper interval is a root, so ``p`` changes sign
    across it.
    """
    if not p.c:
        raise ValueError("zero polynomial has no isolated roots")
    sf = p.squarefree_part().primitive()
    if sf.degree <= 0:
        return []
    seq = sturm_sequence(sf)
    bound = cauchy_bound(sf)
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = sturm_count(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            if sf(hi) == 0:
                out.append((hi, hi))
                continue
            if sf(lo) != 0:
                out.append((lo, hi))
                continue
            # lo is the neighbouring root; shrink until the sign at lo is usable
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def refine(p, lo, hi, width):
    """Bisect an isolating interval of the squarefree ``p`` down to ``width``."""
    lo, hi = as_rational(lo), as_rational(hi)
    if lo == hi:
        return lo, hi
    slo = p(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = p(mid)
        if sm == 0:
            return mid, mid
        if (sm > 0) == (slo > 0):
            lo, slo = mid, sm
        else:
            hi = mid
    return lo, hi


# -- resultants and interpolation -----------------------------------------------

def resultant(a, b):
    """Resultant of two univariate polynomials over Q (Euclidean recursion)."""
    if not a.c or not b.c:
        return mpq(0)
    m, n = a.degree, b.degree
    if n == 0:
        return b.c[0] ** m
    if m == 0:
        return a.c[0] ** n
    if m < n:
        s = -1 if (m * n) % 2 else 1
        return s * resultant(b, a)
    r = a % b
    if not r.c:
        return mpq(0)
    k = r.degree
    s = -1 if (m * n) % 2 else 1
    return s * b.lc() ** (m - k) * resultant(b, r)


def interpolate(xs, ys):
    """Newton interpolation through distinct rational nodes."""
    xs = [as_rational(x) for x in xs]
    coef = [as_rational(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = UPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        out = out * UPoly([-xs[i], 1]) + UPoly([coef[i]])
    return out


def poly_to_upoly(p, name):
    return UPoly.from_poly(p, name)


def bivariate_coefficients(p, name):
    """Split ``p`` by powers of ``name``; every coefficient must be constant."""
    out = {}
    for e, coeff in p.coefficients_in(name).items():
        out[e] = coeff.constant_value()
    return out


def as_univariate(p, name):
    if not isinstance(p, Poly):
        raise TypeError("expected a polynomial")
    return UPoly.from_poly(p, name)
