"""Case C: no off-diagonal connection survives; only the product axioms remain.

Seven axioms ``omega_i omega_j = -l_i l_j - c`` couple the slots ``p, q, r``
with ``u, v`` and ``u`` with ``v``.  Three branches, by which curvature (if
any) vanishes; at most one can, since the curvatures are distinct.

(i)   all nonzero: the ratios give ``phi`` on ``p, q, r`` and ``psi`` on
      ``u, v``, and then ``(1 + phi psi) l_p (l_u - l_v) = 0``.  The factor
      ``1 + phi psi = 0`` forces ``c = 0`` and ``psi^2 + 1 = 0``.
(ii)  ``l_p = 0``: ``omega_p = 0``, ``c = 0`` and ``gamma^2 + 1 = 0``.
(iii) ``l_u = 0``: ``omega_u = c = 0``, ``omega_i = phi l_i`` on ``p, q, r``
      and ``omega_v = -l_v / phi``; the flow is the one of branch B3.
"""

from dataclasses import replace
from functools import lru_cache

from ..exact.certificate import DISCREPANCY, run_comparison
from ..exact.elim import reduce_by
from ..exact.poly import Ring, jet, param
from ..exact.univariate import UPoly, real_root_intervals
from . import case_b

SLOTS = "pqruv"

BASE = (
    "E != 0 (lambda1 is not locally constant)",
    "lambda1 != 0",
    "n > 4",
    "curvatures lambda1, l_p, l_q, l_r, l_u, l_v pairwise distinct",
)


@lru_cache(maxsize=None)
def case_c_ring():
    syms = [jet("lambda1"), jet("phi"), jet("psi"), jet("gamma")]
    syms += [jet(f"l_{s}") for s in SLOTS] + [jet(f"w_{s}") for s in SLOTS]
    return Ring(syms + [param("c")])


def build_case_c_context():
    ring = case_c_ring()
    c = ring.var("c")
    axioms = {}
    for i in "pqr":
        for j in "uv":
            axioms[i + j] = (ring.var(f"w_{i}") * ring.var(f"w_{j}")
                             + ring.var(f"l_{i}") * ring.var(f"l_{j}") + c)
    axioms["uv"] = ring.var("w_u") * ring.var("w_v") + ring.var("l_u") * ring.var("l_v") + c
    omega = {s: ring.var(f"w_{s}") for s in SLOTS}
    return case_b.BranchContext(ring, axioms, omega, BASE)


def real_root_count(p, var):
    u = UPoly.from_poly(p, var)
    return len(real_root_intervals(u))


def _no_real_root(cert, poly, var):
    """Demote ``cert`` if ``poly`` (univariate in ``var``) has a real root."""
    k = real_root_count(poly, var)
    note = f"{poly} has {k} real roots (Sturm count)"
    if k == 0:
        return replace(cert, notes=cert.notes + (note,))
    if cert.certified:
        return replace(cert, status=DISCREPANCY, residual=poly, notes=cert.notes + (note,))
    return replace(cert, notes=cert.notes + (note,))


def _flow_image(ring, slot):
    """Images of ``l_i`` and ``omega_i`` under ``e1``: ``(l_i - lambda1) omega_i`` and ``omega_i^2 + lambda1 l_i + c``."""
    l, c = ring.vars("lambda1", "c")
    li, wi = ring.vars(f"l_{slot}", f"w_{slot}")
    return (li - l) * wi, wi ** 2 + l * li + c


def branch_nonzero(ctx):
    ring = ctx.ring
    l, phi, psi, c = ring.vars("lambda1", "phi", "psi", "c")
    lp, lu, lv = ring.vars("l_p", "l_u", "l_v")
    law = {"w_p": phi * lp, "w_q": phi * ring.var("l_q"), "w_r": phi * ring.var("l_r"),
           "w_u": psi * lu, "w_v": psi * lv}
    asm = ctx.assumptions + ("every l_i != 0",)
    g = (lp, lu, lv, lu - lv)
    certs = []

    def ratio():
        diff = ctx.axioms["pu"] - ctx.axioms["pv"]
        wp, wu, wv = ring.vars("w_p", "w_u", "w_v")
        return diff, wp * (wu - wv) + lp * (lu - lv), (
            "omega_u = omega_v would give l_p (l_u - l_v) = 0, so the ratio is defined",)

    certs.append(run_comparison("C-ratio", "omega_pp / l_p = -(l_u - l_v)/(omega_uu - omega_vv)",
                                ratio, asm, g, up_to_multiple=False))

    def main():
        diff = (ctx.axioms["pu"] - ctx.axioms["pv"]).subs(law)
        return diff, (1 + phi * psi) * lp * (lu - lv), (
            "l_p != 0 and l_u != l_v leave only 1 + phi psi = 0",)

    certs.append(run_comparison("C-nonzero", "(1 + phi psi) l_p (l_u - l_v) = 0, so l_u = l_v",
                                main, asm, g))

    degenerate = 1 + phi * psi

    def forces_c():
        out, _ = reduce_by(ctx.axioms["pu"].subs(law), degenerate, {"phi": 1, "psi": 1})
        return out, c, ()

    certs.append(run_comparison("C-phipsi-c", "1 + phi psi = 0 gives c = 0", forces_c,
                                asm + ("sub-branch 1 + phi psi = 0",), g, up_to_multiple=False))

    def psi_square():
        out = ctx.axioms["uv"].subs(law).specialize({"c": 0})
        return out, (psi ** 2 + 1) * lu * lv, ()

    cert = run_comparison("C-phipsi", "c = 0 then psi^2 + 1 = 0", psi_square,
                          asm + ("sub-branch 1 + phi psi = 0", "c = 0"), g)
    certs.append(_no_real_root(cert, psi ** 2 + 1, "psi"))
    return certs


def branch_lp0(ctx):
    ring = ctx.ring
    l, gamma, c = ring.vars("lambda1", "gamma", "c")
    lq, lu, lv = ring.vars("l_q", "l_u", "l_v")
    wp, wq, wu, wv = ring.vars("w_p", "w_q", "w_u", "w_v")
    asm = ctx.assumptions + ("l_p = 0",)
    g = (l, lq, lu, lv)
    certs = []

    def omega_zero():
        dl, _ = _flow_image(ring, "p")
        return dl.specialize({"l_p": 0}), -l * wp, ("lambda1 != 0 leaves omega_pp = 0",)

    certs.append(run_comparison("C-lp0-omega", "e1(l_p) = -lambda1 omega_pp at l_p = 0",
                                omega_zero, asm, g, up_to_multiple=False))

    def c_zero():
        return ctx.axioms["pu"].specialize({"l_p": 0, "w_p": 0}), c, ()

    certs.append(run_comparison("C-lp0-c", "omega_pp = 0 gives c = 0", c_zero, asm, g,
                                up_to_multiple=False))

    def ratio():
        out = (lv * ctx.axioms["qu"] - lu * ctx.axioms["qv"]).specialize({"c": 0})
        return out, wq * (wu * lv - wv * lu), (
            "omega_q = 0 would give l_q l_u = 0, so omega_u / l_u = omega_v / l_v",)

    certs.append(run_comparison("C-lp0-ratio", "omega_uu / l_u = omega_vv / l_v = gamma", ratio,
                                asm + ("c = 0",), g, up_to_multiple=False))

    def gamma_square():
        law = {"w_u": gamma * lu, "w_v": gamma * lv}
        out = ctx.axioms["uv"].subs(law).specialize({"c": 0})
        return out, (gamma ** 2 + 1) * lu * lv, ()

    cert = run_comparison("C-lp0", "gamma^2 = -1", gamma_square, asm + ("c = 0",), g)
    certs.append(_no_real_root(cert, gamma ** 2 + 1, "gamma"))
    return certs


def branch_lu0(ctx, n=6):
    ring = ctx.ring
    l, phi, c = ring.vars("lambda1", "phi", "c")
    lp, lv = ring.vars("l_p", "l_v")
    wp, wu, wv = ring.vars("w_p", "w_u", "w_v")
    asm = ctx.assumptions + ("l_u = 0",)
    g = (l, lp, lv, phi)
    certs = []

    def omega_zero():
        dl, _ = _flow_image(ring, "u")
        return dl.specialize({"l_u": 0}), -l * wu, ("lambda1 != 0 leaves omega_uu = 0",)

    certs.append(run_comparison("C-lu0-omega", "e1(l_u) = -lambda1 omega_uu at l_u = 0",
                                omega_zero, asm, g, up_to_multiple=False))

    def c_zero():
        return ctx.axioms["pu"].specialize({"l_u": 0, "w_u": 0}), c, ()

    certs.append(run_comparison("C-lu0-c", "omega_uu = 0 gives c = 0", c_zero, asm, g,
                                up_to_multiple=False))

    def ratio():
        out = ctx.axioms["pv"].specialize({"c": 0}).subs({"w_p": phi * lp}).divexact(lp)
        return out, phi * wv + lv, ("divided by l_p",)

    certs.append(run_comparison("C-lu0-ratio", "omega_vv / l_v = -1/phi", ratio,
                                asm + ("c = 0", "omega_i = phi l_i for i = p, q, r"), g))

    def phi_flow():
        dl, dw = _flow_image(ring, "p")
        rel = (dw - phi * dl).specialize({"c": 0}).subs({"w_p": phi * lp})
        return rel.divexact(lp), l * (phi ** 2 + 1), ("divided by l_p",)

    certs.append(run_comparison("C-lu0-phi-flow", "e1(phi) = lambda1 (phi^2 + 1)", phi_flow,
                                asm + ("c = 0", "omega_i = phi l_i for i = p, q, r"), g,
                                up_to_multiple=False))

    flow_asm = asm + ("c = 0", "omega_i = phi l_i for i = p, q, r", "omega_vv = -l_v / phi",
                      "slot u drops out of every sum (l_u = omega_uu = 0)")
    fring = case_b.flow_ring()
    c3_0 = case_b.c3_factor(fring).specialize({"c": 0}).divexact(fring.var("v"))
    certs.append(case_b.closure_by_elimination(
        "C-lu0-C3", "sub-branch C3 = 0 leaves a nonzero polynomial in lambda1", "B3", c3_0,
        n, 1, flow_asm + ("sub-branch C3 = 0",)))
    certs.append(case_b.final_certificate(
        "C-lu0", "nonzero polynomial in lambda1 with constant coefficients", "B3", n,
        flow_asm + ("C3 != 0",)))
    return certs


def case_c_certificates(n=6):
    ctx = build_case_c_context()
    return branch_nonzero(ctx) + branch_lp0(ctx) + branch_lu0(ctx, n)
