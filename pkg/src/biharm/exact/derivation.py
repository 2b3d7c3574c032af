"""Table-driven derivations extended to polynomials by the Leibniz rule."""

from .poly import Poly, Ring, UnregisteredSymbol


class DerivationTable:
    """A derivation given by the images of the ring's symbols.

    Parameters differentiate to zero.  A jet variable without an explicit rule
    maps to its jet successor; if the ring has no successor the symbol cannot
    be differentiated and :class:`UnregisteredSymbol` is raised.
    """

    def __init__(self, ring: Ring, rules=None):
        self.ring = ring
        self.rules = {}
        for name, image in (rules or {}).items():
            sym = ring.symbol(name)
            if sym.is_parameter:
                raise ValueError(f"parameter {name!r} cannot carry a derivation rule")
            image = ring.coerce(image)
            self.rules[name] = image
        for name, image in self.rules.items():
            for s in image.symbols():
                ring.symbol(s)

    def with_rules(self, **updates):
        merged = dict(self.rules)
        merged.update(updates)
        return DerivationTable(self.ring, merged)

    def image(self, name):
        sym = self.ring.symbol(name)
        if sym.is_parameter:
            return self.ring.zero()
        if name in self.rules:
            return self.rules[name]
        succ = self.ring.jet_successor(name)
        if succ is None:
            raise UnregisteredSymbol(name, "derivation table (no rule and no jet successor)")
        return self.ring.var(succ)

    def __call__(self, p):
        return derive(p, self)


def derive(p: Poly, table: DerivationTable) -> Poly:
    ring = table.ring
    p = ring.coerce(p)
    total = ring.zero()
    for name in p.symbols():
        if ring.symbol(name).is_parameter:
            continue
        image = table.image(name)
        if not image:
            continue
        total = total + p.diff(name) * image
    return total
