"""Canonical sparse multivariate polynomials over the rationals.

A :class:`Ring` fixes an ordered tuple of symbols.  Exponent vectors are packed
into one Python int, 16 bits per symbol with the first symbol in the most
significant field, so monomial multiplication is integer addition and integer
comparison is lexicographic comparison over the symbol order.  The top bit of
each field is a guard: any product that would reach exponent 2**15 raises.
"""

from dataclasses import dataclass
from heapq import heappop, heappush
from math import gcd

from gmpy2 import mpq

from .rational import ExactRational, as_rational, format_rational, short_rational

BITS = 16
FIELD = (1 << BITS) - 1
MINUS_INFINITY = float("-inf")

PARAMETER = "parameter"
JET = "jet-variable"


class ExponentOverflow(ArithmeticError):
    pass


class UnregisteredSymbol(KeyError):
    def __init__(self, name, where=""):
        super().__init__(name)
        self.name = name
        self.where = where

    def __str__(self):
        suffix = f" in {self.where}" if self.where else ""
        return f"symbol {self.name!r} is not registered{suffix}"


class MissingAssignment(KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"no value assigned to symbol {self.name!r}"


class NotDivisible(ArithmeticError):
    pass


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str = JET
    jet_order: int = 0
    base: str = ""

    def __post_init__(self):
        if self.kind not in (JET, PARAMETER):
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.kind == PARAMETER and self.jet_order != 0:
            raise ValueError(f"parameter {self.name!r} must have jet order 0")
        if self.jet_order < 0:
            raise ValueError("jet order must be non-negative")

    @property
    def is_parameter(self):
        return self.kind == PARAMETER


def jet(name, order=0, base=None):
    return Symbol(name, JET, order, base or name)


def param(name):
    return Symbol(name, PARAMETER, 0, name)


class Ring:
    """An ordered set of symbols; the order fixes packing and term order."""

    def __init__(self, symbols):
        syms = []
        for s in symbols:
            syms.append(s if isinstance(s, Symbol) else jet(s))
        names = [s.name for s in syms]
        if len(set(names)) != len(names):
            raise ValueError("symbol names must be unique within a ring")
        self.symbols = tuple(syms)
        self.names = tuple(names)
        self.index = {s: i for i, s in enumerate(names)}
        count = len(syms)
        self.shift = tuple((count - 1 - i) * BITS for i in range(count))
        self.unit = tuple(1 << sh for sh in self.shift)
        guard = 0
        for sh in self.shift:
            guard |= 1 << (sh + BITS - 1)
        self.guard = guard
        self._zero = Poly(self, {})

    def __repr__(self):
        return f"Ring({', '.join(self.names)})"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __contains__(self, name):
        return name in self.index

    def symbol(self, name):
        try:
            return self.symbols[self.index[name]]
        except KeyError:
            raise UnregisteredSymbol(name, repr(self)) from None

    def jet_successor(self, name):
        """Name of the next jet of ``name`` in this ring, or ``None``."""
        s = self.symbol(name)
        if s.is_parameter:
            return None
        for t in self.symbols:
            if not t.is_parameter and t.base == s.base and t.jet_order == s.jet_order + 1:
                return t.name
        return None

    # -- packing -----------------------------------------------------------

    def pack(self, exps):
        key = 0
        for name, power in exps.items():
            if power < 0:
                raise ValueError("negative exponent")
            if power == 0:
                continue
            if power >= 1 << (BITS - 1):
                raise ExponentOverflow(f"exponent {power} too large")
            try:
                key += power << self.shift[self.index[name]]
            except KeyError:
                raise UnregisteredSymbol(name, repr(self)) from None
        return key

    def unpack(self, key):
        return tuple((key >> sh) & FIELD for sh in self.shift)

    def exps_dict(self, key):
        return {n: e for n, e in zip(self.names, self.unpack(key)) if e}

    # -- constructors ------------------------------------------------------

    def zero(self):
        return self._zero

    def one(self):
        return Poly(self, {0: mpq(1)})

    def const(self, value):
        q = as_rational(value)
        return Poly(self, {0: q} if q else {})

    def var(self, name):
        return Poly(self, {self.unit[self.index_of(name)]: mpq(1)})

    def vars(self, *names):
        return tuple(self.var(n) for n in names)

    def index_of(self, name):
        try:
            return self.index[name]
        except KeyError:
            raise UnregisteredSymbol(name, repr(self)) from None

    def monomial(self, exps, coeff=1):
        q = as_rational(coeff)
        return Poly(self, {self.pack(exps): q} if q else {})

    def from_terms(self, terms):
        """Normalize a raw list of ``(coeff, {symbol: power})`` pairs."""
        acc = {}
        for coeff, exps in terms:
            q = as_rational(coeff)
            if not q:
                continue
            k = self.pack(exps)
            acc[k] = acc.get(k, 0) + q
        return Poly(self, {k: v for k, v in acc.items() if v})

    def coerce(self, value):
        if isinstance(value, Poly):
            if value.ring is not self and value.ring != self:
                return self.embed(value)
            return value
        return self.const(value)

    def embed(self, p):
        """Re-express ``p`` (from another ring) in this ring, by symbol name."""
        if p.ring == self:
            return Poly(self, p._t)
        src = p.ring
        moves = []
        for i, name in enumerate(src.names):
            moves.append((name, src.shift[i], self.shift[self.index[name]] if name in self.index else None))
        out = {}
        for k, c in p._t.items():
            nk = 0
            for name, sh_src, sh_dst in moves:
                e = (k >> sh_src) & FIELD
                if e:
                    if sh_dst is None:
                        raise UnregisteredSymbol(name, repr(self))
                    nk += e << sh_dst
            out[nk] = c
        return Poly(self, out)

    def from_json(self, data):
        terms = [(t["coeff"], t["exps"]) for t in data]
        return self.from_terms(terms)


class Poly:
    """Immutable polynomial; ``_t`` maps packed exponent keys to nonzero mpq."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self._t = terms
        self._hash = None

    # -- basic protocol ----------------------------------------------------

    def __bool__(self):
        return bool(self._t)

    def is_zero(self):
        return not self._t

    def __len__(self):
        return len(self._t)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, ExactRational)):
            return self._t == ({0: mpq(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._t.items())))
        return self._hash

    def _other(self, other):
        if isinstance(other, Poly):
            if other.ring is self.ring or other.ring == self.ring:
                return other._t
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        q = as_rational(other)
        return {0: q} if q else {}

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        b = self._other(other)
        if len(b) > len(self._t):
            a, b = b, self._t
        else:
            a = self._t
        out = dict(a)
        for k, c in b.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        b = self._other(other)
        out = dict(self._t)
        for k, c in b.items():
            v = out.get(k)
            if v is None:
                out[k] = -c
            else:
                v = v - c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Poly(self.ring, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            q = as_rational(other)
            if not q:
                return self.ring.zero()
            return Poly(self.ring, {k: c * q for k, c in self._t.items()})
        b = self._other(other)
        a = self._t
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return self.ring.zero()
        out = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        guard = self.ring.guard
        res = {}
        for k, v in out.items():
            if v:
                if k & guard:
                    raise ExponentOverflow("exponent field overflow in product")
                res[k] = v
        return Poly(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return self.divexact(other)
        q = as_rational(other)
        if not q:
            raise ZeroDivisionError("division by zero")
        return self * (1 / q)

    def scale(self, q):
        return self * q

    # -- structure ---------------------------------------------------------

    def keys(self):
        return self._t.keys()

    def items(self):
        return self._t.items()

    def coeff(self, exps):
        return self._t.get(self.ring.pack(exps), mpq(0))

    def symbols(self):
        """Names of symbols that occur with positive exponent."""
        seen = 0
        for k in self._t:
            seen |= k
        return tuple(n for n, sh in zip(self.ring.names, self.ring.shift) if (seen >> sh) & FIELD)

    def degree(self, name=None):
        if not self._t:
            return MINUS_INFINITY
        if name is None:
            return max(sum(self.ring.unpack(k)) for k in self._t)
        sh = self.ring.shift[self.ring.index_of(name)]
        return max((k >> sh) & FIELD for k in self._t)

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._t.get(0, mpq(0))

    def coefficients_in(self, name):
        """Map ``power -> coefficient polynomial`` with ``name`` stripped."""
        sh = self.ring.shift[self.ring.index_of(name)]
        parts = {}
        for k, c in self._t.items():
            e = (k >> sh) & FIELD
            parts.setdefault(e, {})[k - (e << sh)] = c
        return {e: Poly(self.ring, t) for e, t in parts.items()}

    def leading_coefficient(self, name):
        if not self._t:
            return self.ring.zero(), MINUS_INFINITY
        parts = self.coefficients_in(name)
        d = max(parts)
        return parts[d], d

    def part_divisible_by(self, exps):
        """Split into (quotient of terms divisible by the monomial, remainder)."""
        m = self.ring.pack(exps) if isinstance(exps, dict) else exps
        guard = self.ring.guard
        quo, rem = {}, {}
        for k, c in self._t.items():
            d = k - m
            if d >= 0 and not d & guard:
                quo[d] = c
            else:
                rem[k] = c
        return Poly(self.ring, quo), Poly(self.ring, rem)

    def monomial_content(self):
        """Largest monomial dividing every term (as packed key)."""
        if not self._t:
            return 0
        mins = None
        for k in self._t:
            e = self.ring.unpack(k)
            mins = e if mins is None else tuple(min(a, b) for a, b in zip(mins, e))
        return sum(e << sh for e, sh in zip(mins, self.ring.shift))

    def shift_down(self, key):
        """Divide by the monomial with packed exponent ``key`` (must divide)."""
        guard = self.ring.guard
        out = {}
        for k, c in self._t.items():
            d = k - key
            if d < 0 or d & guard:
                raise NotDivisible("monomial does not divide every term")
            out[d] = c
        return Poly(self.ring, out)

    def shift_up(self, key):
        guard = self.ring.guard
        out = {}
        for k, c in self._t.items():
            nk = k + key
            if nk & guard:
                raise ExponentOverflow("exponent field overflow")
            out[nk] = c
        return Poly(self.ring, out)

    def content(self):
        """Positive rational content: gcd of numerators over lcm of denominators."""
        g = 0
        l = 1
        for c in self._t.values():
            g = gcd(g, int(c.numerator))
            d = int(c.denominator)
            l = l * d // gcd(l, d)
        if g == 0:
            return mpq(0)
        return mpq(g, l)

    def leading_term(self):
        """Lexicographically largest key and its coefficient."""
        k = max(self._t)
        return k, self._t[k]

    def primitive(self):
        """Return (content, primitive part) with positive leading coefficient."""
        if not self._t:
            return mpq(0), self
        c = self.content()
        if self._t[max(self._t)] < 0:
            c = -c
        return c, self * (1 / c)

    def map_coefficients(self, fn):
        out = {}
        for k, c in self._t.items():
            v = as_rational(fn(c))
            if v:
                out[k] = v
        return Poly(self.ring, out)

    # -- calculus / substitution -------------------------------------------

    def diff(self, name):
        i = self.ring.index_of(name)
        sh = self.ring.shift[i]
        unit = self.ring.unit[i]
        out = {}
        for k, c in self._t.items():
            e = (k >> sh) & FIELD
            if e:
                out[k - unit] = c * e
        return Poly(self.ring, out)

    def subs(self, mapping):
        """Substitute polynomials (or rationals) for symbols, one symbol at a time."""
        result = self
        for name, value in mapping.items():
            value = self.ring.coerce(value)
            parts = result.coefficients_in(name)
            if len(parts) == 1 and 0 in parts:
                continue
            top = max(parts)
            acc = parts.get(top, self.ring.zero())
            for e in range(top - 1, -1, -1):
                acc = acc * value
                if e in parts:
                    acc = acc + parts[e]
            result = acc
        return result

    def specialize(self, assignment):
        """Partially evaluate at exact rationals; returns a polynomial."""
        ring = self.ring
        fixed = []
        for name, value in assignment.items():
            i = ring.index_of(name)
            fixed.append((ring.shift[i], as_rational(value)))
        cache = {}
        out = {}
        for k, c in self._t.items():
            v = c
            nk = k
            for sh, val in fixed:
                e = (k >> sh) & FIELD
                if e:
                    key = (sh, e)
                    pw = cache.get(key)
                    if pw is None:
                        pw = val ** e
                        cache[key] = pw
                    v = v * pw
                    nk -= e << sh
            if v:
                out[nk] = out.get(nk, 0) + v
        return Poly(ring, {k: v for k, v in out.items() if v})

    def evaluate(self, assignment):
        """Exact value; every occurring symbol must be assigned."""
        ring = self.ring
        vals = []
        for name in self.symbols():
            if name not in assignment:
                raise MissingAssignment(name)
            vals.append((ring.shift[ring.index[name]], as_rational(assignment[name])))
        total = mpq(0)
        cache = {}
        for k, c in self._t.items():
            v = c
            for sh, val in vals:
                e = (k >> sh) & FIELD
                if e:
                    pw = cache.get((sh, e))
                    if pw is None:
                        pw = val ** e
                        cache[(sh, e)] = pw
                    v = v * pw
            total += v
        return total

    def evaluate_float(self, assignment):
        """Double-precision value plus the sum of absolute term magnitudes."""
        ring = self.ring
        vals = []
        for name in self.symbols():
            if name not in assignment:
                raise MissingAssignment(name)
            vals.append((ring.shift[ring.index[name]], float(assignment[name])))
        total = 0.0
        scale = 0.0
        for k, c in self._t.items():
            v = float(c)
            for sh, val in vals:
                e = (k >> sh) & FIELD
                if e:
                    v *= val ** e
            total += v
            scale += abs(v)
        return total, scale

    # -- division ----------------------------------------------------------

    def divexact(self, other):
        """Exact quotient ``self / other``; raises :class:`NotDivisible` otherwise."""
        q, r = self.divmod_lex(other)
        if r:
            raise NotDivisible("nonzero remainder")
        return q

    def divmod_lex(self, other, stop_on_failure=True):
        """Multivariate division by ``other`` with respect to lex order.

        With ``stop_on_failure`` the loop ends at the first leading term that is
        not divisible; the remainder then holds everything not yet reduced.
        """
        b = self._other(other)
        if not b:
            raise ZeroDivisionError("division by the zero polynomial")
        guard = self.ring.guard
        lb = max(b)
        lcb = b[lb]
        btail = [(k - lb, c) for k, c in b.items() if k != lb]
        rem = dict(self._t)
        heap = [-k for k in rem]
        heap.sort()
        quo = {}
        leftover = {}
        while heap:
            k = -heappop(heap)
            c = rem.get(k)
            if c is None:
                continue
            d = k - lb
            if d < 0 or d & guard:
                if stop_on_failure:
                    leftover = rem
                    break
                leftover[k] = rem.pop(k)
                continue
            t = c / lcb
            quo[d] = quo.get(d, 0) + t
            del rem[k]
            for off, cb in btail:
                kk = k + off
                v = rem.get(kk)
                if v is None:
                    rem[kk] = -t * cb
                    heappush(heap, -kk)
                else:
                    v = v - t * cb
                    if v:
                        rem[kk] = v
                    else:
                        del rem[kk]
        else:
            leftover.update(rem)
        return Poly(self.ring, {k: v for k, v in quo.items() if v}), Poly(self.ring, leftover)

    def multiplicity_of(self, factor, limit=10_000):
        """Strip ``factor`` as often as it divides exactly; return (count, cofactor)."""
        count = 0
        cur = self
        if not cur:
            raise ValueError("zero polynomial has unbounded multiplicity")
        while count < limit:
            q, r = cur.divmod_lex(factor)
            if r:
                break
            cur = q
            count += 1
        return count, cur

    # -- ordering / output -------------------------------------------------

    def sorted_keys(self):
        """Keys in canonical order: graded lex over the ring order, highest first."""
        unpack = self.ring.unpack
        return sorted(self._t, key=lambda k: (sum(unpack(k)), k), reverse=True)

    def terms(self):
        names = self.ring.names
        out = []
        for k in self.sorted_keys():
            exps = tuple((n, e) for n, e in zip(names, self.ring.unpack(k)) if e)
            out.append((self._t[k], exps))
        return out

    def to_json(self):
        return [
            {"coeff": format_rational(c), "exps": dict(exps)}
            for c, exps in self.terms()
        ]

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for c, exps in self.terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in exps)
            if not mono:
                body = short_rational(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{short_rational(abs(c))}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]


def normalize(ring, terms):
    """Canonical polynomial from raw ``(coeff, exps)`` pairs; idempotent."""
    if isinstance(terms, Poly):
        return ring.coerce(terms)
    return ring.from_terms(terms)


def leading_coefficient(p, name):
    return p.leading_coefficient(name)


def eval_exact(p, assignment):
    return p.evaluate(assignment)
