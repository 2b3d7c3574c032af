"""Finite frame instances: slots of distinct curvatures with their multiplicities.

Each slot ``i`` carries a curvature ``l_i`` and a connection value ``w_i``; the
multiplicities ``n_i`` are parameters.  Sums over slots are handled through
*moments* ``M(a, b) = sum_i n_i l_i^a w_i^b``: a polynomial that is linear in
the multiplicities is decomposed into moments, and the decomposition is only
accepted when every slot contributes the same coefficient (a complete sub-sum).
"""

from dataclasses import dataclass

from ..exact.derivation import DerivationTable
from ..exact.poly import FIELD, Poly, Ring, jet, param


class IncompleteSum(ValueError):
    """A polynomial is not a combination of complete slot sums."""


@dataclass(frozen=True)
class FrameInstance:
    count: int
    ring: Ring
    derivation: DerivationTable
    constraints: dict
    moment_ring: Ring
    moment_rules: dict
    extra: tuple = ()

    @property
    def multiplicities(self):
        return tuple(f"n{i}" for i in range(1, self.count + 1))

    def slot(self, i):
        return self.ring.var(f"l{i}"), self.ring.var(f"w{i}")

    def moment_sum(self, a, b):
        """``sum_i n_i l_i^a w_i^b`` as a frame polynomial."""
        out = self.ring.zero()
        for i in range(1, self.count + 1):
            li, wi = self.slot(i)
            out = out + self.ring.var(f"n{i}") * li ** a * wi ** b
        return out

    def S(self, k):
        return self.moment_sum(0, k)

    def T(self, k):
        return self.moment_sum(1, k)

    def derive(self, p):
        return self.derivation(p)

    def moment(self, a, b):
        return self.moment_ring.var(moment_name(a, b))

    def decompose(self, p):
        return decompose(self, p)

    def reduce(self, p):
        """Decompose into moments and apply the constraint rewrites."""
        return apply_moment_rules(self, decompose(self, p))


MAX_MOMENT = 8


def moment_name(a, b):
    return f"M{a}_{b}"


def _moment_ring(extra=()):
    syms = [jet("lambda1"), jet("E", 1, "lambda1")] + [jet(x) for x in extra]
    syms += [jet(moment_name(a, b)) for a in range(0, 4) for b in range(0, MAX_MOMENT)]
    syms += [param("n"), param("c"), param("R")]
    return Ring(syms)


def build_frame_instance(count, extra=(), _allow_degenerate=False):
    """Frame with ``count`` slots, the slot derivation rules and sum constraints.

    ``count`` must be 4 or 5; the single-slot instance used as a smoke test is
    only reachable through the private flag.  ``extra`` names further global
    jet variables (for instance ``phi`` and ``psi``) that carry no rule yet.
    """
    allowed = (4, 5) + ((1,) if _allow_degenerate else ())
    if count not in allowed:
        raise ValueError(f"frame instances have 4 or 5 slots, got {count}")
    extra = tuple(extra)
    syms = [jet("lambda1"), jet("E", 1, "lambda1")] + [jet(x) for x in extra]
    syms += [jet(f"l{i}") for i in range(1, count + 1)]
    syms += [jet(f"w{i}") for i in range(1, count + 1)]
    syms += [param("n"), param("c"), param("R")]
    syms += [param(f"n{i}") for i in range(1, count + 1)]
    ring = Ring(syms)
    lam, e = ring.vars("lambda1", "E")
    n, c, R = ring.vars("n", "c", "R")
    s1 = ring.zero()
    rules = {"lambda1": e}
    for i in range(1, count + 1):
        li, wi, ni = ring.vars(f"l{i}", f"w{i}", f"n{i}")
        rules[f"l{i}"] = (li - lam) * wi
        rules[f"w{i}"] = wi ** 2 + lam * li + c
        s1 = s1 + ni * wi
    # second derivative of lambda1 in terms of the first connection sum
    rules["E"] = e * s1 + lam * (n * (n - 2) * c - R + 4 * lam ** 2)
    table = DerivationTable(ring, rules)
    mring = _moment_ring(extra)
    ml, me = mring.vars("lambda1", "E")
    mn, mc, mR = mring.vars("n", "c", "R")
    constraints = {
        (0, 0): mn - 1,
        (1, 0): -3 * ml,
        (2, 0): mn * (mn - 1) * mc - mR + 3 * ml ** 2,
    }
    inst = FrameInstance(count, ring, table, constraints, mring, {}, extra)
    rules_m = dict(constraints)
    # differentiate the sum constraints once: the new top moment is solved for
    for a, b in ((1, 0), (2, 0)):
        lhs = inst.moment_sum(a, b)
        d = decompose(inst, table(lhs))
        drhs = _derive_moment_rhs(mring, constraints[(a, b)])
        relation = d - drhs
        coeff, rest = relation.part_divisible_by(mring.pack({moment_name(a, b + 1): 1}))
        if not coeff.is_constant():
            raise AssertionError("derived constraint is not linear in its top moment")
        solved = rest * (-1 / coeff.constant_value())
        rules_m[(a, b + 1)] = _rewrite(mring, solved, rules_m)
    return FrameInstance(count, ring, table, constraints, mring, rules_m, extra)


def _derive_moment_rhs(mring, rhs):
    # right-hand sides only involve lambda1 and parameters
    return rhs.diff("lambda1") * mring.var("E")


def decompose(inst, p):
    """Rewrite a frame polynomial, linear in the multiplicities, via moments."""
    ring = inst.ring
    mring = inst.moment_ring
    count = inst.count
    sh = {name: ring.shift[ring.index[name]] for name in ring.names}
    slot_of = {}
    for i in range(1, count + 1):
        slot_of[f"l{i}"] = (i, 0)
        slot_of[f"w{i}"] = (i, 1)
    globals_ = ("lambda1", "E") + tuple(inst.extra) + ("n", "c", "R")
    groups = {}
    plain = {}
    for key, coeff in p.items():
        mult = [i for i in range(1, count + 1) if (key >> sh[f"n{i}"]) & FIELD]
        slot_exps = {}
        for name, (i, which) in slot_of.items():
            e = (key >> sh[name]) & FIELD
            if e:
                slot_exps.setdefault(i, [0, 0])[which] = e
        gkey = 0
        for g in globals_:
            e = (key >> sh[g]) & FIELD
            if e:
                gkey += e << mring.shift[mring.index[g]]
        if not mult:
            if slot_exps:
                raise IncompleteSum("slot variables outside a weighted sum")
            plain[gkey] = plain.get(gkey, 0) + coeff
            continue
        if len(mult) != 1 or (key >> sh[f"n{mult[0]}"]) & FIELD != 1:
            raise IncompleteSum("polynomial is not linear in the multiplicities")
        i = mult[0]
        if any(j != i for j in slot_exps):
            raise IncompleteSum("term mixes different slots")
        a, b = slot_exps.get(i, [0, 0])
        groups.setdefault((a, b, gkey), {})[i] = coeff
    out = dict(plain)
    for (a, b, gkey), per_slot in groups.items():
        vals = set(per_slot.values())
        if len(per_slot) != count or len(vals) != 1:
            raise IncompleteSum(f"incomplete sum for moment ({a}, {b})")
        if a > 3 or b >= MAX_MOMENT:
            raise IncompleteSum(f"moment ({a}, {b}) outside the supported range")
        mk = gkey + mring.unit[mring.index[moment_name(a, b)]]
        out[mk] = out.get(mk, 0) + vals.pop()
    return Poly(mring, {k: v for k, v in out.items() if v})


def _rewrite(mring, p, rules):
    subs = {moment_name(a, b): v for (a, b), v in rules.items()}
    prev = None
    cur = p
    while prev != cur:
        prev = cur
        cur = cur.subs({k: v for k, v in subs.items() if k in cur.symbols()})
    return cur


def apply_moment_rules(inst, p):
    return _rewrite(inst.moment_ring, p, inst.moment_rules)
