"""Recursions for the connection power sums ``f_k`` and mixed sums ``g_k``.

``f_k = sum n_i w_i^k`` and ``g_k`` are the sums weighted by ``l_i`` (``g_3``
by ``l_i^2``).  Each recursion is checked on a frame instance: its
denominator-cleared form, with every quantity replaced by the corresponding
slot sum and ``e_1`` by the frame derivation, must reduce to the zero
polynomial after moment decomposition.  The ledger also carries each quantity
as an explicit expression in ``lambda1`` and its jets.
"""

from dataclasses import dataclass, field

from gmpy2 import mpq

from ..exact.certificate import run_certificate
from ..exact.derivation import DerivationTable
from ..exact.fraction import MonoFraction
from ..exact.poly import Ring, jet, param
from .frame import FrameInstance, moment_name

JET_ORDER = 6


def jet_ring():
    syms = [jet("lambda1"), jet("E", 1, "lambda1")]
    syms += [jet(f"E{k}", k, "lambda1") for k in range(2, JET_ORDER + 1)]
    syms += [param("n"), param("c"), param("R")]
    return Ring(syms)


@dataclass
class PowerSumLedger:
    f: dict
    g: dict
    certificates: list
    B: object
    H: tuple
    ring: Ring = None
    notes: list = field(default_factory=list)

    def certificate(self, name):
        for cert in self.certificates:
            if cert.name == name:
                return cert
        raise KeyError(name)

    @property
    def all_certified(self):
        return all(c.certified for c in self.certificates)


def jet_quantities():
    """``f_1..f_5`` and ``g_1..g_4`` as fractions in the jets of ``lambda1``."""
    ring = jet_ring()
    table = DerivationTable(ring)
    lam, e, e2 = ring.vars("lambda1", "E", "E2")
    n, c, R = ring.vars("n", "c", "R")

    def frac(p):
        return MonoFraction.of(ring, p)

    def d(x):
        return x.derive(table)

    f, g = {}, {}
    f[1] = frac(e2 - lam * (n * (n - 2) * c + 4 * lam ** 2 - R)).divide_by_monomial("E")
    f[2] = frac(3 * lam ** 2 - (n - 1) * c) + d(f[1])
    g[1] = f[1] * lam - frac(3 * e)
    f[3] = d(f[2]).scale(mpq(1, 2)) - g[1] * lam - f[1] * c
    g[2] = (d(g[1]) - frac(lam * (n * (n - 1) * c - R + 3 * lam ** 2))
            + frac(3 * c * lam) + f[2] * lam).scale(mpq(1, 2))
    f[4] = d(f[3]).scale(mpq(1, 3)) - g[2] * lam - f[2] * c
    g[3] = frac(3 * lam * e) + g[1] * lam
    g[4] = (d(g[2]) + f[3] * lam - g[3] * (2 * lam) - g[1] * (2 * c)).scale(mpq(1, 3))
    f[5] = d(f[4]).scale(mpq(1, 4)) - g[4] * lam - f[3] * c
    return ring, f, g


def _recursions(inst: FrameInstance):
    """Both sides of each cleared recursion as frame polynomials, keyed by name."""
    ring = inst.ring
    D = inst.derive
    lam, e = ring.vars("lambda1", "E")
    n, c, R = ring.vars("n", "c", "R")
    S, T = inst.S, inst.T
    G3 = inst.moment_sum(2, 1)
    M20 = n * (n - 1) * c - R + 3 * lam ** 2
    big = n * (n - 2) * c + 4 * lam ** 2 - R
    return [
        ("f1", "first connection sum from the lambda1 equation", "cleared by E", "E != 0",
         lambda: (e * S(1), D(e) - lam * big)),
        ("f2", "second power sum from the derivative of the first", None, None,
         lambda: (S(2), 3 * lam ** 2 - (n - 1) * c + D(S(1)))),
        ("g1", "weighted first sum from differentiating the trace constraint", None, None,
         lambda: (T(1), lam * S(1) - 3 * e)),
        ("f3", "third power sum", "cleared by 2", None,
         lambda: (2 * S(3), D(S(2)) - 2 * lam * T(1) - 2 * c * S(1))),
        ("g2", "weighted second sum", "cleared by 2", None,
         lambda: (2 * T(2), D(T(1)) - lam * M20 + 3 * c * lam + lam * S(2))),
        ("f4", "fourth power sum", "cleared by 3", None,
         lambda: (3 * S(4), D(S(3)) - 3 * lam * T(2) - 3 * c * S(2))),
        ("g3", "square-weighted first sum", None, None,
         lambda: (G3, 3 * lam * e + lam * T(1))),
        ("g4", "weighted third sum", "cleared by 3", None,
         lambda: (3 * T(3), D(T(2)) + lam * S(3) - 2 * lam * G3 - 2 * c * T(1))),
        ("f5", "fifth power sum", "cleared by 4", None,
         lambda: (4 * S(5), D(S(4)) - 4 * lam * T(3) - 4 * c * S(3))),
    ]


def verify_power_sum_chain(inst: FrameInstance) -> PowerSumLedger:
    base = (
        "lambda_j != lambda1 for every slot",
        "sum of multiplicities = n - 1",
        f"{inst.count} distinct slot curvatures",
    )
    certs = []
    for name, anchor, cleared, extra, build in _recursions(inst):
        assumptions = base + ((extra,) if extra else ())

        def program(build=build, cleared=cleared):
            lhs, rhs = build()
            engine, reference = inst.reduce(lhs), inst.reduce(rhs)
            residual = inst.reduce(lhs - rhs)
            notes = (cleared,) if cleared else ()
            return residual, None, notes, {"engine": engine, "reference": reference}

        certs.append(run_certificate(name, anchor, program, assumptions))
    ring, f, g = jet_quantities()
    lam = ring.var("lambda1")
    n, c, R = ring.vars("n", "c", "R")
    B = n * (n - 1) * c - R + 4 * lam ** 2
    H = (-2 * lam, n)
    return PowerSumLedger(f=f, g=g, certificates=certs, B=B, H=H, ring=ring)


def moment_to_jets():
    """Map from moment symbols to the jet-level quantity they equal."""
    ring, f, g = jet_quantities()
    table = {moment_name(0, k): f[k] for k in range(1, 6)}
    table[moment_name(1, 1)] = g[1]
    table[moment_name(1, 2)] = g[2]
    table[moment_name(1, 3)] = g[4]
    table[moment_name(2, 1)] = g[3]
    return ring, table


def reduce_to_jets(inst: FrameInstance, p):
    """Reduce a frame polynomial to a fraction in lambda1-jets and parameters."""
    ring, table = moment_to_jets()
    m = inst.reduce(p)
    out = MonoFraction.of(ring, ring.zero())
    for coeff, exps in m.terms():
        term = MonoFraction.of(ring, ring.const(coeff))
        for name, power in exps:
            if name in table:
                term = term * table[name] ** power
            elif name.startswith("M"):
                raise ValueError(f"moment {name} has no jet-level value")
            else:
                term = term * MonoFraction.of(ring, ring.var(name) ** power)
        out = out + term
    return out


def power_sum_certificates(counts=(4, 5)):
    """The nine recursion certificates on each instance, named ``f1@4`` and so on."""
    from dataclasses import replace

    from .frame import build_frame_instance

    out = []
    for count in counts:
        ledger = verify_power_sum_chain(build_frame_instance(count))
        out += [replace(c, name=f"{c.name}@{count}") for c in ledger.certificates]
    return out
