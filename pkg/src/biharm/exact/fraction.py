"""Polynomials divided by a monomial in symbols assumed nonvanishing.

The ring itself has no division.  Quantities such as ``(E2 - ...)/E`` are
carried as a numerator polynomial plus a packed monomial denominator; clearing
the denominator is always a multiplication by a monomial, and every symbol
that ever appears in a denominator is reported so that callers can record its
nonvanishing as an assumption.
"""

from .poly import FIELD, Poly


class MonoFraction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=0):
        self.num = num
        self.den = den
        self._cancel()

    @classmethod
    def of(cls, ring, value):
        if isinstance(value, MonoFraction):
            return value
        return cls(ring.coerce(value), 0)

    @property
    def ring(self):
        return self.num.ring

    def _cancel(self):
        if not self.den:
            return
        if not self.num:
            self.den = 0
            return
        common = self.num.monomial_content()
        ring = self.num.ring
        shared = 0
        for sh in ring.shift:
            e = min((common >> sh) & FIELD, (self.den >> sh) & FIELD)
            shared += e << sh
        if shared:
            self.num = self.num.shift_down(shared)
            self.den -= shared

    def denominator_symbols(self):
        ring = self.num.ring
        return tuple(n for n, sh in zip(ring.names, ring.shift) if (self.den >> sh) & FIELD)

    def denominator(self):
        ring = self.num.ring
        return Poly(ring, {self.den: ring.one().constant_value()})

    def _lift(self, other):
        if isinstance(other, MonoFraction):
            return other
        return MonoFraction(self.num.ring.coerce(other), 0)

    def _common(self, other):
        ring = self.num.ring
        lcm = 0
        for sh in ring.shift:
            lcm += max((self.den >> sh) & FIELD, (other.den >> sh) & FIELD) << sh
        a = self.num.shift_up(lcm - self.den) if lcm != self.den else self.num
        b = other.num.shift_up(lcm - other.den) if lcm != other.den else other.num
        return a, b, lcm

    def __add__(self, other):
        other = self._lift(other)
        a, b, d = self._common(other)
        return MonoFraction(a + b, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        a, b, d = self._common(other)
        return MonoFraction(a - b, d)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return MonoFraction(-self.num, self.den)

    def __mul__(self, other):
        other = self._lift(other)
        return MonoFraction(self.num * other.num, self.den + other.den)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = MonoFraction(self.num.ring.one(), 0)
        for _ in range(k):
            out = out * self
        return out

    def divide_by_monomial(self, name, power=1):
        ring = self.num.ring
        return MonoFraction(self.num, self.den + (power << ring.shift[ring.index_of(name)]))

    def scale(self, q):
        return MonoFraction(self.num * q, self.den)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._lift(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_polynomial(self):
        return self.den == 0

    def as_poly(self):
        if self.den:
            raise ValueError("fraction has a nontrivial denominator")
        return self.num

    def cleared(self):
        """Numerator after multiplying by the denominator monomial."""
        return self.num

    def evaluate(self, assignment):
        return self.num.evaluate(assignment) / self.denominator().evaluate(assignment)

    def derive(self, table):
        """Quotient rule with a monomial denominator ``m``.

        ``(N/m)' = (N' * x - N * sum_i k_i x_i' * (x/x_i)) / (m * x)`` where
        ``x`` is the product of the distinct denominator symbols.
        """
        from .derivation import derive

        ring = self.num.ring
        dn = derive(self.num, table)
        if not self.den:
            return MonoFraction(dn, 0)
        xs = self.denominator_symbols()
        x_key = sum(ring.unit[ring.index[s]] for s in xs)
        top = dn.shift_up(x_key)
        for s in xs:
            k = (self.den >> ring.shift[ring.index[s]]) & FIELD
            rest_key = x_key - ring.unit[ring.index[s]]
            top = top - (self.num * table.image(s)).shift_up(rest_key) * k
        return MonoFraction(top, self.den + x_key)

    def __repr__(self):
        if not self.den:
            return f"MonoFraction({self.num})"
        return f"MonoFraction(({self.num}) / {self.denominator()})"


def as_fraction(ring, value):
    return MonoFraction.of(ring, value)
