"""Case B: four slots follow ``omega_i = phi*l_i + psi``, the fifth slot ``v`` does not.

The product axioms ``omega_i omega_v = -l_i l_v - c`` for the four linear
slots give ``phi*omega_v = -l_v`` and ``l_v psi = c phi``.  The second one
splits the case three ways:

* ``B1``: ``c != 0``.  Then ``psi`` and ``l_v`` are both nonzero and
  ``psi = c phi / l_v``; ``l_v`` (written ``v``) is kept as the unknown.
* ``B2``: ``c = 0``, ``psi != 0``.  Then ``l_v = 0`` and ``omega_v = 0``.
* ``B3``: ``c = 0``, ``psi = 0``; ``l_v`` is free and ``omega_v = -v/phi``.

Each branch gets a scaled flow, the second-order relation with two of its
derivatives, and the elimination of :mod:`.branch`.  Factors of the leading
coefficient that were divided out are closed as sub-branches of their own.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from ..exact.certificate import run_certificate, run_comparison
from ..exact.derivation import DerivationTable
from ..exact.elim import reduce_by
from ..exact.fraction import MonoFraction
from ..exact.poly import Ring, jet, param
from .branch import BranchFlow, count_terms, eliminate_branch, form_is_monomial, outer_eliminate
from .resultants import halve, parity, resultant_in, strip_known, strip_monomial

WEIGHTS = {"lambda1": 1, "v": 1, "psi": 1, "c": 2, "R": 2}

BASE = (
    "E != 0 (lambda1 is not locally constant)",
    "lambda1 != 0",
    "n > 4",
    "curvatures lambda1, l_p, l_q, l_r, l_u, l_v pairwise distinct",
    "omega_i = phi*l_i + psi for i = p, q, r, u",
    "phi != 0",
)


def admissible_n5(n):
    """Multiplicities of the fifth slot: every slot has multiplicity >= 1 and they sum to n - 1."""
    return list(range(1, n - 1 - 4 + 1))


# -- axioms -----------------------------------------------------------------------

@lru_cache(maxsize=None)
def axiom_ring():
    names = ["lambda1", "phi", "psi", "l_p", "l_q", "l_r", "l_u", "l_v", "w_v"]
    return Ring([jet(s) for s in names] + [param("n"), param("c"), param("R"), param("n5")])


@dataclass(frozen=True)
class BranchContext:
    ring: object
    axioms: dict
    omega: dict
    assumptions: tuple = BASE
    extra: dict = field(default_factory=dict)

    def guards(self, *names):
        return tuple(self.ring.var(s) for s in names)


def build_case_b_context():
    ring = axiom_ring()
    phi, psi, wv, lv, c = ring.vars("phi", "psi", "w_v", "l_v", "c")
    omega = {s: phi * ring.var(f"l_{s}") + psi for s in "pqru"}
    axioms = {s: omega[s] * wv + ring.var(f"l_{s}") * lv + c for s in "pqru"}
    return BranchContext(ring, axioms, omega)


def certificates_427_428(ctx):
    ring = ctx.ring
    phi, psi, wv, lv, c, lp, lq = ring.vars("phi", "psi", "w_v", "l_v", "c", "l_p", "l_q")
    rel427 = phi * wv + lv
    g = ctx.guards("phi", "l_p", "l_q", "l_v")

    def b427():
        diff = ctx.axioms["p"] - ctx.axioms["q"]
        return diff.divexact(lp - lq), rel427, ("divided by l_p - l_q",)

    def b428():
        out, mult = reduce_by(phi * ctx.axioms["p"], rel427, {"phi": 1, "w_v": 1})
        return out, lv * psi - c * phi, (f"multiplier {mult}",)

    def slot(s):
        # the remaining axioms add nothing once the two relations hold
        def build():
            out, mult = reduce_by(phi * ctx.axioms[s], rel427, {"phi": 1, "w_v": 1})
            return out, lv * psi - c * phi, (f"multiplier {mult}",)
        return build

    asm = ctx.assumptions + ("l_p != l_q",)
    return [
        run_comparison("4.27", "phi * omega_vv = -l_v", b427, asm, g),
        run_comparison("4.28", "l_v psi = c phi", b428, asm, g),
    ] + [run_comparison(f"B-axioms-{s}", f"the {s} product axiom reduces to l_v psi = c phi",
                        slot(s), asm, g) for s in "ru"]


# -- flows ------------------------------------------------------------------------

@lru_cache(maxsize=None)
def flow_ring():
    return Ring([jet("lambda1"), jet("phi"), jet("psi"), jet("v"),
                 param("n"), param("c"), param("R"), param("m")])


def _sums(ring, lv):
    """Power sums over the four linear slots from the trace and Gauss relations."""
    l, n, c, R, m = ring.vars("lambda1", "n", "c", "R", "m")
    s1 = -3 * l - m * lv
    s2 = n * (n - 1) * c - R + 3 * l ** 2 - m * lv ** 2
    return s1, s2, n - 1 - m


def _weighted(ring, phi, psi, lv, wv):
    """``3 e1(lambda1) = sum n_i (lambda1 - l_i) omega_i`` and ``sum n_i omega_i``."""
    l, m = ring.vars("lambda1", "m")
    s1, s2, M = _sums(ring, lv)
    three_e = MonoFraction.of(ring, phi * (l * s1 - s2)) + psi * (l * M - s1) + wv * (m * (l - lv))
    total = MonoFraction.of(ring, phi * s1) + psi * M + wv * m
    return three_e, total


def _mf(ring, num, **den):
    return MonoFraction(ring.coerce(num), ring.pack(den) if den else 0)


def _scaled(ring, sigma, image):
    return (MonoFraction.of(ring, image) * MonoFraction(ring.monomial(sigma), 0)).as_poly()


def _make_flow(name, sigma, images, three_e, total, assumptions):
    ring = flow_ring()
    rules = {s: _scaled(ring, sigma, img) for s, img in images.items()}
    rules["lambda1"] = _scaled(ring, sigma, three_e.scale(mpq(1, 3)))
    table = DerivationTable(ring, rules)
    return BranchFlow(name, ring, table, ring.pack(sigma), three_e, total, assumptions)


@lru_cache(maxsize=None)
def flow_b1():
    ring = flow_ring()
    l, phi, v, c = ring.vars("lambda1", "phi", "v", "c")
    psi = _mf(ring, c * phi, v=1)
    wv = _mf(ring, -v, phi=1)
    three_e, total = _weighted(ring, MonoFraction.of(ring, phi), psi, v, wv)
    images = {
        "phi": MonoFraction.of(ring, l * (phi ** 2 + 1)) + MonoFraction.of(ring, phi) * psi,
        "v": wv * (v - l),
    }
    return _make_flow("B1", {"phi": 1, "v": 1}, images, three_e, total,
                      BASE + ("c != 0", "l_v != 0", "psi = c phi / l_v"))


@lru_cache(maxsize=None)
def flow_b2():
    ring = flow_ring()
    l, phi, psi, c = ring.vars("lambda1", "phi", "psi", "c")
    zero = ring.zero()
    three_e, total = _weighted(ring, MonoFraction.of(ring, phi), MonoFraction.of(ring, psi),
                               zero, MonoFraction.of(ring, zero))
    images = {
        "phi": MonoFraction.of(ring, l * (phi ** 2 + 1) + phi * psi),
        "psi": MonoFraction.of(ring, psi * (l * phi + psi) + c),
    }
    return _make_flow("B2", {}, images, three_e, total,
                      BASE + ("c = 0", "psi != 0", "l_v = 0", "omega_vv = 0"))


@lru_cache(maxsize=None)
def flow_b3():
    ring = flow_ring()
    l, phi, v = ring.vars("lambda1", "phi", "v")
    wv = _mf(ring, -v, phi=1)
    three_e, total = _weighted(ring, MonoFraction.of(ring, phi), MonoFraction.of(ring, ring.zero()),
                               v, wv)
    images = {"phi": MonoFraction.of(ring, l * (phi ** 2 + 1)), "v": wv * (v - l)}
    return _make_flow("B3", {"phi": 1}, images, three_e, total,
                      BASE + ("c = 0", "psi = 0", "l_v != 0"))


def _same(a, b):
    """Numerators of two fractions over their common monomial denominator."""
    x, y, _ = a._common(b)
    return x, y


def consistency_certificates():
    """The substituted ``psi`` and ``omega_vv`` obey their own flow equations."""
    certs = []
    fl = flow_b1()
    ring = fl.ring
    l, phi, v, c = ring.vars("lambda1", "phi", "v", "c")
    psi = _mf(ring, c * phi, v=1)
    wv = _mf(ring, -v, phi=1)

    def psi_flow():
        lhs = fl.d(psi)
        rhs = psi * (MonoFraction.of(ring, l * phi) + psi) + MonoFraction.of(ring, c)
        a, b = _same(lhs, rhs)
        return a, b, ()

    def v_slot(flow, w, curvature):
        def build():
            lhs = flow.d(w)
            rhs = w * w + MonoFraction.of(flow.ring, l * v + curvature)
            a, b = _same(lhs, rhs)
            return a, b, ()
        return build

    g = (phi, v)
    certs.append(run_comparison("B-psi-flow", "e1(c phi / l_v) = psi(lambda1 phi + psi) + c",
                                psi_flow, fl.assumptions, g, up_to_multiple=False))
    certs.append(run_comparison("B1-v-slot", "e1(omega_vv) = omega_vv^2 + lambda1 l_v + c",
                                v_slot(fl, wv, c), fl.assumptions, g, up_to_multiple=False))
    f3 = flow_b3()
    certs.append(run_comparison("B3-v-slot", "e1(omega_vv) = omega_vv^2 + lambda1 l_v (c = 0)",
                                v_slot(f3, wv, 0), f3.assumptions, g, up_to_multiple=False))
    return certs


# -- per-branch elimination ---------------------------------------------------------

def c3_factor(ring):
    l, v, c, R = ring.vars("lambda1", "v", "c", "R")
    return v ** 3 - v ** 2 * l - 6 * v * l ** 2 - 29 * v * c + v * R + 7 * l * c


@dataclass
class BranchRun:
    name: str
    spec: dict
    relations: list
    inner: str
    outer: str
    strip: list
    forms: tuple
    base: dict
    elimination: object = None


def _prepare(flow, spec, inner):
    gs = [g.specialize(spec) for g in flow.relations()]
    if all(parity(g, inner) == {0} for g in gs):
        return [halve(g, inner) for g in gs], True
    return gs, False


@lru_cache(maxsize=None)
def branch_run(name, n=6, m=1, probe_start=30):
    ring = flow_ring()
    l, v, c, R, psi = ring.vars("lambda1", "v", "c", "R", "psi")
    if name == "B1":
        spec = {"n": n, "m": m}
        flow, inner, outer = flow_b1(), "phi", "v"
        strip = [("v - lambda1", v - l), ("v^2 - c", v ** 2 - c), ("C3", c3_factor(ring))]
        forms, base = ("c", "R"), {}
    elif name == "B2":
        spec = {"n": n, "m": m, "c": 0}
        flow, inner, outer = flow_b2(), "phi", "psi"
        strip = [("6 lambda1^2 - R", 6 * l ** 2 - R)]
        forms, base = ("R",), {}
    elif name == "B3":
        spec = {"n": n, "m": m, "c": 0}
        flow, inner, outer = flow_b3(), "phi", "v"
        strip = [("v - lambda1", v - l), ("C3 at c = 0", c3_factor(ring).specialize({"c": 0}).divexact(v))]
        forms, base = ("R",), {}
    else:
        raise ValueError(name)
    rels, halved = _prepare(flow, spec, inner)
    run = BranchRun(name, spec, rels, inner, outer, strip, forms, base)
    run.elimination = eliminate_branch(rels, inner, outer, strip, WEIGHTS, forms, base, probe_start)
    run.elimination.notes.append("relations even in phi, rewritten in phi^2" if halved
                                 else "relations used as they are")
    return run


def _final_notes(run):
    el = run.elimination
    notes = [
        f"n = {run.spec['n']}, n5 = {run.spec['m']}",
        f"relation sizes {el.sizes}",
        f"stripped {el.stripped}",
        f"weighted degree {el.weight}, degree in lambda1 {el.degree}",
        f"top coefficient {el.top_form}",
    ]
    point, u = el.probes[0]
    notes.append(f"at {point}: {count_terms(u)} nonzero coefficients, top {u.c[-1]}")
    if form_is_monomial(el.top_form):
        notes.append("top coefficient is a single power of a nonzero parameter")
    else:
        notes.append("top coefficient is a form with more than one term")
    return notes


def final_certificate(cert_name, anchor, branch, n=6, assumptions=()):
    """Nonvanishing of the engine's final polynomial for every admissible ``n5``."""
    ring = flow_ring()

    def program():
        notes = []
        failures = ring.zero()
        for m in admissible_n5(n):
            run = branch_run(branch, n, m)
            el = run.elimination
            point, u = el.probes[0]
            if not u or not el.top_form:
                failures = failures + ring.one()
            notes += _final_notes(run)
        return failures, None, tuple(notes)

    return run_certificate(cert_name, anchor, program, assumptions)


def leading_certificate(cert_name, branch, expected, n=6, m=1, assumptions=()):
    """The inner leading coefficient of ``H1`` equals the stated product, up to a constant."""
    def build():
        run = branch_run(branch, n, m)
        lc, _ = run.relations[0].leading_coefficient(run.inner)
        return lc, expected.specialize(run.spec), ()
    return run_comparison(cert_name, f"lc of H1 in {branch} = {expected}", build, assumptions)


def closure_by_flow(cert_name, anchor, flow, factor, reference, spec, assumptions, guards=()):
    """``e1(factor)`` equals the stated nonvanishing expression."""
    def build():
        num = flow.d(factor).num
        return num.specialize(spec), reference.specialize(spec), ()
    return run_comparison(cert_name, anchor, build, assumptions, guards)


def closure_by_elimination(cert_name, anchor, branch, factor, n=6, m=1, assumptions=()):
    """Sub-branch ``factor = 0``: eliminate with ``e1(factor)`` and ``H1``; nonzero result."""
    ring = flow_ring()

    def program():
        run = branch_run(branch, n, m)
        flow = {"B1": flow_b1, "B3": flow_b3}[branch]()
        f = factor.specialize(run.spec)
        k = strip_monomial(flow.d(f).num)[0].specialize(run.spec)
        if parity(k, run.inner) == {0}:
            k = halve(k, run.inner)
        h1 = run.relations[0]
        r = resultant_in(h1, k, run.inner) if k.degree(run.inner) > 0 else k
        r, key = strip_monomial(r)
        r, powers = strip_known(r, [f for _, f in run.strip])
        total, degree, top, probes = outer_eliminate(r, f, run.outer, WEIGHTS, run.forms, run.base)
        notes = [f"n = {n}, n5 = {m}", f"e1(factor) relation {len(k)} terms",
                 f"resultant {len(r)} terms, stripped powers {powers}",
                 f"weighted degree {total}, degree in lambda1 {degree}", f"top coefficient {top}"]
        bad = ring.zero() if (probes[0][1] and top) else ring.one()
        return bad, None, tuple(notes)

    return run_certificate(cert_name, anchor, program, assumptions)


def case_b_certificates(n=6):
    ctx = build_case_b_context()
    certs = certificates_427_428(ctx)
    certs += consistency_certificates()
    ring = flow_ring()
    l, phi, psi, v, c, R = ring.vars("lambda1", "phi", "psi", "v", "c", "R")
    f1, f2, f3 = flow_b1(), flow_b2(), flow_b3()
    c3 = c3_factor(ring)
    c3_0 = c3.specialize({"c": 0}).divexact(v)

    def phi_zero():
        image = f2.table.image("phi").specialize({"phi": 0})
        return image, l, ("phi = 0 would force lambda1 = 0",)

    certs.append(run_comparison("B-phi0", "phi = 0 in e1(phi) = lambda1(phi^2 + 1) + phi psi",
                                phi_zero, BASE[:-1] + ("sub-branch phi = 0",), (l,),
                                up_to_multiple=False))
    certs.append(leading_certificate("B1-lc", "B1", (v ** 2 - c) * c3, n, 1, f1.assumptions))
    certs.append(closure_by_flow(
        "B1-v2c", "e1(l_v^2 - c) = -2 l_v^2 (l_v - lambda1) / phi, nonzero",
        f1, v ** 2 - c, -2 * v ** 2 * (v - l), {}, f1.assumptions + ("sub-branch l_v^2 = c",),
        (phi, v)))
    certs.append(closure_by_elimination(
        "B1-C3", "sub-branch C3 = 0 leaves a nonzero polynomial in lambda1", "B1", c3, n, 1,
        f1.assumptions + ("sub-branch C3 = 0",)))
    certs.append(final_certificate(
        "B-final", "c != 0: nonzero polynomial in lambda1 with constant coefficients", "B1", n,
        f1.assumptions + ("l_v^2 != c", "C3 != 0")))

    certs.append(leading_certificate("B2-lc", "B2", psi * (6 * l ** 2 - R), n, 1, f2.assumptions))
    certs.append(closure_by_flow(
        "B2-R6", "e1(6 lambda1^2 - R) = 4 lambda1 (3E), nonzero", f2, 6 * l ** 2 - R,
        4 * l * f2.three_e.as_poly(), {}, f2.assumptions + ("sub-branch 6 lambda1^2 = R",)))
    certs.append(final_certificate(
        "B2-final", "c = 0, l_v = 0: nonzero polynomial in lambda1", "B2", n,
        f2.assumptions + ("6 lambda1^2 != R",)))

    certs.append(leading_certificate("B3-lc", "B3", v * c3_0, n, 1, f3.assumptions))
    certs.append(closure_by_elimination(
        "B3-C3", "sub-branch C3 = 0 (c = 0) leaves a nonzero polynomial in lambda1", "B3", c3_0,
        n, 1, f3.assumptions + ("sub-branch C3 = 0",)))
    certs.append(final_certificate(
        "B3-final", "c = 0, psi = 0: nonzero polynomial in lambda1", "B3", n,
        f3.assumptions + ("C3 != 0",)))
    return certs

