"""Fixed-step RK4 for the Case-A flow with constraint monitoring.

The state is ``(lambda1, phi, psi)``; the right-hand sides are the closure
``3 lambda1' = K phi + (n+2) lambda1 psi`` and the two Riccati-type equations
for ``phi`` and ``psi``.  At every accepted step four constraint residuals are
recorded: the E-free quadric, the linear relation, the derived quadric and
the final polynomial in ``lambda1``.
"""

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

from ..exact.derivation import DerivationTable
from ..exact.poly import FIELD
from ..exact.univariate import UPoly, real_root_intervals, refine
from ..elimination import transcribed as tr

COLUMNS = ("t", "lambda1", "phi", "psi", "res_4_8", "res_4_9", "res_4_11", "res_final")
RESIDUALS = COLUMNS[4:]
BLOWUP = 1e12


def exact(value):
    """Exact rational from an int, a fraction string or a float (through its decimal text)."""
    if isinstance(value, (int, mpq)):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    f = Fraction(str(value))
    return mpq(f.numerator, f.denominator)


@dataclass(frozen=True)
class CaseAState:
    t: float
    lambda1: float
    phi: float
    psi: float

    def H(self, n):
        return -2.0 * self.lambda1 / n

    def vector(self):
        return (self.lambda1, self.phi, self.psi)

    def finite(self):
        return all(math.isfinite(x) for x in self.vector())


@dataclass(frozen=True)
class Params:
    n: object
    c: object
    R: object

    def exact(self):
        return {"n": exact(self.n), "c": exact(self.c), "R": exact(self.R)}

    def floats(self):
        return tuple(float(v) for v in self.exact().values())


class _Compiled:
    """A polynomial in ``(lambda1, phi, psi)`` lowered to float terms."""

    def __init__(self, p):
        ring = p.ring
        extra = [s for s in p.symbols() if s not in ("lambda1", "phi", "psi")]
        if extra:
            raise ValueError(f"unexpected symbols {extra}")
        shs = [ring.shift[ring.index[s]] for s in ("lambda1", "phi", "psi")]
        self.terms = [(float(c), tuple((k >> sh) & FIELD for sh in shs)) for k, c in p.items()]
        self.poly = p

    def __call__(self, l, f, p):
        total = 0.0
        for c, (a, b, d) in self.terms:
            total += c * (l ** a) * (f ** b) * (p ** d)
        return total


def native_relations():
    from ..elimination.case_a import native_chain
    s = native_chain().steps
    return {"res_4_8": s["quadric"], "res_4_9": s["linear"],
            "res_4_11": s["derived_quadric"], "res_final": s["final"]}


def printed_relations():
    return {"res_4_8": tr.phi_psi_quadric(), "res_4_9": tr.linear_phi_psi(),
            "res_4_11": tr.derived_quadric(), "res_final": tr.final_eliminant()}


@dataclass
class ConstraintSet:
    params: Params
    relations: dict
    compiled: dict = field(default_factory=dict)

    @classmethod
    def build(cls, params, source="native"):
        rel = native_relations() if source == "native" else printed_relations()
        spec = params.exact()
        out = cls(params, {k: v.specialize(spec) for k, v in rel.items()})
        out.compiled = {k: _Compiled(v) for k, v in out.relations.items()}
        return out

    def __call__(self, l, f, p):
        return tuple(self.compiled[k](l, f, p) for k in RESIDUALS)


def rhs(l, f, p, n, c, R):
    K = R - n * (n - 1) * c - 6.0 * l * l
    return ((K * f + (n + 2) * l * p) / 3.0,
            l * (f * f + 1.0) + f * p,
            p * (l * f + p) + c)


def rk4_step(y, dt, n, c, R):
    k1 = rhs(*y, n, c, R)
    y2 = tuple(a + 0.5 * dt * b for a, b in zip(y, k1))
    k2 = rhs(*y2, n, c, R)
    y3 = tuple(a + 0.5 * dt * b for a, b in zip(y, k2))
    k3 = rhs(*y3, n, c, R)
    y4 = tuple(a + dt * b for a, b in zip(y, k3))
    k4 = rhs(*y4, n, c, R)
    return tuple(a + dt / 6.0 * (b1 + 2 * b2 + 2 * b3 + b4)
                 for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4))


@dataclass
class Trajectory:
    params: Params
    dt: float
    samples: list = field(default_factory=list)  # [(CaseAState, residual tuple)]
    completed: bool = True
    diagnostic: str = ""

    def column(self, name):
        if name in RESIDUALS:
            i = RESIDUALS.index(name)
            return [r[i] for _, r in self.samples]
        return [getattr(s, name) for s, _ in self.samples]

    def rows(self):
        for s, r in self.samples:
            yield (s.t, s.lambda1, s.phi, s.psi) + tuple(r)

    def write_csv(self, handle):
        w = csv.writer(handle, lineterminator="\n")
        w.writerow(COLUMNS)
        for row in self.rows():
            w.writerow([repr(float(x)) for x in row])


def integrate_case_a(init, params, dt, t_end, constraints=None, record=True):
    """Classical RK4 from ``init`` to ``t_end``; residuals recorded at every step.

    Stops early, with ``completed = False`` and a diagnostic, on overflow or
    when the state leaves ``|x| < 1e12``.
    """
    if not dt > 0 or not t_end > 0:
        raise ValueError("dt and t_end must be positive")
    n, c, R = params.floats()
    if n <= 4:
        raise ValueError("n must exceed 4")
    traj = Trajectory(params, dt)
    steps = int(round(t_end / dt))
    y = init.vector()
    t0 = init.t

    def push(i, y):
        state = CaseAState(t0 + i * dt, *y)
        res = constraints(*y) if constraints is not None else (0.0,) * len(RESIDUALS)
        if not state.finite() or not all(math.isfinite(v) for v in res):
            raise OverflowError("non-finite value")
        if record or i == steps:
            traj.samples.append((state, res))

    try:
        push(0, y)
        for i in range(1, steps + 1):
            y = rk4_step(y, dt, n, c, R)
            if any(abs(v) > BLOWUP for v in y):
                raise OverflowError(f"|state| exceeded {BLOWUP:g}")
            push(i, y)
    except (OverflowError, ZeroDivisionError) as exc:
        traj.completed = False
        t = traj.samples[-1][0].t if traj.samples else t0
        traj.diagnostic = f"blow-up after t = {t!r}: {exc}"
    return traj


def final_value(y, dt, t_end, params):
    n, c, R = params.floats()
    for _ in range(int(round(t_end / dt))):
        y = rk4_step(y, dt, n, c, R)
    return y


def convergence_order(init, params, dt, t_end, component=0):
    """``log2(e(dt) / e(dt/2))`` with errors measured against a ``dt/16`` run."""
    y0 = init.vector()
    ref = final_value(y0, dt / 16, t_end, params)[component]
    e1 = abs(final_value(y0, dt, t_end, params)[component] - ref)
    e2 = abs(final_value(y0, dt / 2, t_end, params)[component] - ref)
    if e1 == 0 or e2 == 0:
        raise ValueError("errors vanish; the order is not measurable here")
    return math.log2(e1 / e2)


# -- symbolic derivative of a residual ----------------------------------------------

def flow_table():
    ring = tr.curve_ring()
    l, phi, psi, n = ring.vars("lambda1", "phi", "psi", "n")
    closure_e = (tr.K() * phi + (n + 2) * l * psi) * mpq(1, 3)
    return DerivationTable(ring, {"lambda1": closure_e, "phi": tr.phi_derivative(),
                                  "psi": tr.psi_derivative()})


def residual_derivative_check(traj, constraints, name="res_4_8"):
    """Largest gap between a 5-point difference of a residual column and its symbolic derivative."""
    rel = constraints.relations[name]
    spec = constraints.params.exact()
    table = flow_table()
    deriv = _Compiled(table(rel.specialize(spec)).specialize(spec))
    col = traj.column(name)
    h = traj.dt
    worst = 0.0
    scale = 0.0
    for i in range(2, len(col) - 2):
        fd = (-col[i + 2] + 8 * col[i + 1] - 8 * col[i - 1] + col[i - 2]) / (12 * h)
        s = traj.samples[i][0]
        sym = deriv(s.lambda1, s.phi, s.psi)
        worst = max(worst, abs(fd - sym))
        scale = max(scale, abs(sym))
    return worst, scale


# -- initial data on the constraint variety -----------------------------------------

class Inadmissible(ValueError):
    pass


def _solve_quadratic(a, b, c):
    if a == 0:
        return [] if b == 0 else [-c / b]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    r = math.sqrt(disc)
    return sorted({(-b - r) / (2 * a), (-b + r) / (2 * a)})


def on_variety_initial(params, constraints=None, tolerance=1e-9):
    """A point with ``lambda1`` a real root of the final polynomial and ``(phi, psi)`` back-solved.

    Exact rational roots are tried first, then the others by increasing
    size.  A root is admissible when the linear relation and the quadric
    have a common real solution that also satisfies the derived quadric.
    Returns ``(CaseAState, info)``; raises :class:`Inadmissible` if no root works.
    """
    cs = constraints or ConstraintSet.build(params)
    u = UPoly.from_poly(cs.relations["res_final"], "lambda1")
    if not u:
        raise Inadmissible("final polynomial vanishes identically at these parameters")
    roots = []
    for lo, hi in real_root_intervals(u):
        if lo == hi:
            roots.append((0, abs(lo), lo, True))
        else:
            a, b = refine(u.squarefree_part(), lo, hi, mpq(1, 10 ** 30))
            mid = (a + b) / 2
            roots.append((1, abs(mid), mid, False))
    roots.sort()
    lin = cs.relations["res_4_9"]
    quad = cs.relations["res_4_8"]
    tried = []
    for _, _, lam, is_exact in roots:
        cand = _back_substitute(lin, quad, lam, is_exact)
        tried.append(str(float(lam)))
        for phi, psi in cand:
            res = cs(float(lam), phi, psi)
            scale = max(1.0, abs(float(lam)))
            if all(abs(r) <= tolerance * scale for r in res[:3]):
                info = {"lambda1": str(lam) if is_exact else repr(float(lam)),
                        "exact_root": is_exact, "roots_tried": tried}
                return CaseAState(0.0, float(lam), phi, psi), info
    raise Inadmissible(f"no admissible root among {len(roots)} real roots: {tried}")


def _coeffs_at(p, lam):
    """``(phi, psi)`` coefficient map of ``p`` with ``lambda1`` set to ``lam``."""
    q = p.specialize({"lambda1": lam})
    ring = q.ring
    sf, sp = ring.shift[ring.index["phi"]], ring.shift[ring.index["psi"]]
    out = {}
    for k, c in q.items():
        key = ((k >> sf) & FIELD, (k >> sp) & FIELD)
        out[key] = out.get(key, 0) + c
    return out


def _back_substitute(lin, quad, lam, is_exact):
    L = _coeffs_at(lin, lam)
    Q = _coeffs_at(quad, lam)
    h1, h2, h3 = L.get((1, 0), 0), L.get((0, 1), 0), -L.get((0, 0), 0)
    extra = set(L) - {(1, 0), (0, 1), (0, 0)}
    if extra:
        raise ValueError("linear relation has higher terms")
    p1, p2, p3 = Q.get((1, 1), 0), Q.get((0, 2), 0), -Q.get((0, 0), 0)
    others = {k: v for k, v in Q.items() if k not in ((1, 1), (0, 2), (0, 0)) and v}
    if is_exact and not any((h1, h2, h3, p1, p2, p3)) and not others:
        # every relation is void at this root: the zero section is consistent
        return [(0.0, 0.0)]
    h1, h2, h3, p1, p2, p3 = (float(x) for x in (h1, h2, h3, p1, p2, p3))
    out = []
    if abs(h1) > 0:
        # phi = (h3 - h2 psi)/h1 in p1 phi psi + p2 psi^2 = p3
        a = p2 - p1 * h2 / h1
        b = p1 * h3 / h1
        for psi in _solve_quadratic(a, b, -p3):
            out.append(((h3 - h2 * psi) / h1, psi))
    elif abs(h2) > 0:
        psi = h3 / h2
        if abs(p1 * psi) > 0:
            out.append(((p3 - p2 * psi * psi) / (p1 * psi), psi))
    return out
