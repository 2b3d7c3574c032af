"""Scaled flows and the elimination driver shared by the branch cases.

Away from Case A some connection values carry denominators (``-l_v/phi`` and
the like).  Instead of working in a fraction field the flow is multiplied by
a monomial ``sigma`` in symbols assumed nonvanishing: ``sigma*e1`` sends each
symbol to a polynomial, and ``e1(x)`` is carried as a :class:`MonoFraction`
with ``sigma`` in the denominator.

The elimination itself is fixed: three relations ``H1, H2, H3`` in an inner
unknown, an outer unknown and ``lambda1``; resultants in the inner unknown,
known factors stripped, then the outer resultant by interpolation in
``lambda1``.  Every relation is weighted homogeneous (``lambda1`` and the
slot curvatures weigh 1, ``c`` and ``R`` weigh 2), which makes the top
coefficient a binary form that a handful of numeric probes determine.
"""

from dataclasses import dataclass, field

from gmpy2 import mpq

from ..exact.fraction import MonoFraction
from ..exact.poly import FIELD, Poly
from ..exact.univariate import interpolate
from .resultants import lambda_resultant, resultant_in, strip_known, strip_monomial


@dataclass(frozen=True)
class BranchFlow:
    """``sigma*e1`` on a branch ring, with ``3 e1(lambda1)`` and the connection sum."""

    name: str
    ring: object
    table: object
    scale: int
    three_e: MonoFraction
    sum_omega: MonoFraction
    assumptions: tuple = ()

    def d(self, x):
        y = MonoFraction.of(self.ring, x).derive(self.table)
        return MonoFraction(y.num, y.den + self.scale)

    def e(self):
        return self.three_e.scale(mpq(1, 3))

    def forcing(self):
        l, n, c, R = self.ring.vars("lambda1", "n", "c", "R")
        return l * (n * (n - 2) * c - R + 4 * l ** 2)

    def second_order(self):
        """``e1(E) - E * sum_omega - lambda1(n(n-2)c - R + 4 lambda1^2)``."""
        e = self.e()
        return self.d(e) - e * self.sum_omega - MonoFraction.of(self.ring, self.forcing())

    def relations(self, depth=3):
        """The second-order relation and its first ``depth - 1`` derivatives, monomials cleared."""
        g = strip_monomial(self.second_order().num)[0]
        out = [g]
        for _ in range(depth - 1):
            g = strip_monomial(self.d(g).num)[0]
            out.append(g)
        return out


def weighted_degrees(p, weights):
    ring = p.ring
    shs = {name: ring.shift[ring.index[name]] for name in weights if name in ring}
    return {sum(w * ((k >> shs[s]) & FIELD) for s, w in weights.items() if s in shs)
            for k in p.keys()}


def homogeneous_weight(p, weights):
    degs = weighted_degrees(p, weights)
    if len(degs) != 1:
        raise ValueError(f"not weighted homogeneous: weights {sorted(degs)}")
    return degs.pop()


@dataclass
class Elimination:
    inner: str
    outer: str
    sizes: dict = field(default_factory=dict)
    stripped: dict = field(default_factory=dict)
    main: tuple = ()
    weight: int = 0
    probes: list = field(default_factory=list)  # [(assignment, UPoly in lambda1)]
    degree: int = -1
    top_form: Poly = None
    notes: list = field(default_factory=list)

    @property
    def final(self):
        return self.probes[0][1] if self.probes else None


def inner_eliminate(relations, inner, strip):
    """``Res_inner(H1, H2)`` and ``Res_inner(H1, H3)`` with known factors divided out."""
    h1, h2, h3 = relations
    out, info = [], {}
    for tag, other in (("12", h2), ("13", h3)):
        r = resultant_in(h1, other, inner)
        info[f"res{tag}"] = len(r)
        r, key = strip_monomial(r)
        r, powers = strip_known(r, [f for _, f in strip])
        info[f"monomial{tag}"] = dict(r.ring.exps_dict(key)) if key else {}
        info[f"powers{tag}"] = {name: k for (name, _), k in zip(strip, powers)}
        info[f"main{tag}"] = len(r)
        out.append(r)
    return out, info


def _coefficient(u, k):
    return u.c[k] if 0 <= k < len(u.c) else mpq(0)


def outer_eliminate(a, b, outer, weights, forms, base, probe_start=30, lam="lambda1"):
    """Final polynomial in ``lambda1`` and the exact top coefficient as a form.

    ``forms`` names the weight-2 parameters left free (one or two of them);
    ``base`` fixes every other symbol.  The first form is set to 1 and the
    second, if any, is probed at ``probe_start, probe_start + 1, ...``; the
    coefficient of the top power is interpolated in the probe and
    re-homogenised.
    """
    wa, wb = homogeneous_weight(a, weights), homogeneous_weight(b, weights)
    ma, nb = a.degree(outer), b.degree(outer)
    wy = weights[outer]
    total = wa * nb + wb * ma - wy * ma * nb
    ring = a.ring
    if len(forms) == 1:
        pts = [dict(base, **{forms[0]: 1})]
    else:
        pts = [dict(base, **{forms[0]: 1, forms[1]: probe_start})]
    probes = []

    def run(point):
        u = lambda_resultant(a, b, outer, point, lam)
        for k, v in enumerate(u.c):
            if v and (total - k) % 2:
                raise AssertionError(f"odd-weight coefficient at lambda1^{k}")
        probes.append((point, u))
        return u

    u0 = run(pts[0])
    if not u0:
        raise AssertionError("eliminant vanishes identically at the probe")
    degree = u0.degree
    s = (total - degree) // 2
    if len(forms) == 1:
        top = ring.var(forms[0]) ** s * _coefficient(u0, degree)
        return total, degree, top, probes
    while True:
        r = probe_start + len(probes)
        if len(probes) >= s + 2:
            break
        u = run(dict(base, **{forms[0]: 1, forms[1]: r}))
        if u.degree > degree:
            degree = u.degree
            s = (total - degree) // 2
    xs = [mpq(p[forms[1]]) for p, _ in probes]
    ys = [_coefficient(u, degree) for _, u in probes]
    fit = interpolate(xs[:s + 1], ys[:s + 1])
    for x, y in zip(xs[s + 1:], ys[s + 1:]):
        if fit(x) != y:
            raise AssertionError("top coefficient is not a form of the expected degree")
    if fit.degree > s:
        raise AssertionError("top coefficient exceeds the homogeneous degree")
    f0, f1 = ring.var(forms[0]), ring.var(forms[1])
    top = ring.zero()
    for j, v in enumerate(fit.c):
        if v:
            top = top + f0 ** (s - j) * f1 ** j * v
    return total, degree, top, probes


def eliminate_branch(relations, inner, outer, strip, weights, forms, base, probe_start=30):
    el = Elimination(inner, outer)
    el.sizes = {f"H{i + 1}": len(h) for i, h in enumerate(relations)}
    (a, b), el.stripped = inner_eliminate(relations, inner, strip)
    el.main = (a, b)
    el.weight, el.degree, el.top_form, el.probes = outer_eliminate(
        a, b, outer, weights, forms, base, probe_start)
    return el


def form_is_monomial(p):
    return len(p) == 1


def univariate_to_json(u, var="lambda1"):
    return {str(k): str(v) for k, v in enumerate(u.c) if v}


def count_terms(u):
    return sum(1 for v in u.c if v)


