"""Cross-multiply-and-subtract elimination on "expression = 0" relations."""

from .poly import FIELD, NotDivisible, Poly
from .rational import as_rational

PROPORTIONAL = "proportional-inputs"


def _target_key(ring, target):
    if isinstance(target, Poly):
        if len(target) != 1:
            raise ValueError("target must be a single monomial")
        (key, _), = target.items()
        return key
    if isinstance(target, str):
        return ring.pack({target: 1})
    return ring.pack(dict(target))


def coefficient_of(p, target):
    """Coefficient of a monomial, reading ``p`` as a polynomial in its symbols.

    For target ``psi^2`` this collects exactly the terms whose ``psi``-degree
    is 2; other symbols are left in the returned coefficient.
    """
    ring = p.ring
    key = _target_key(ring, target)
    active = [(sh, (key >> sh) & FIELD) for sh in ring.shift if (key >> sh) & FIELD]
    out = {}
    for k, c in p.items():
        if all(((k >> sh) & FIELD) == e for sh, e in active):
            out[k - key] = c
    return Poly(ring, out)


def eliminate_pair(e1, e2, target, flags=None):
    """Return ``c2*e1 - c1*e2`` where ``c_i`` is the target's coefficient in ``e_i``.

    The target monomial's coefficient cancels identically in the result.  When
    the inputs are proportional the combination is the zero polynomial; that
    is allowed and reported through ``flags`` if a list is supplied.
    """
    c1 = coefficient_of(e1, target)
    c2 = coefficient_of(e2, target)
    if not c1 and not c2:
        raise ValueError(f"target {target!r} occurs in neither input")
    out = c2 * e1 - c1 * e2
    if not out and flags is not None:
        flags.append(PROPORTIONAL)
    if out and coefficient_of(out, target):
        raise AssertionError("target coefficient survived elimination")
    return out


def reduce_by(p, relation, target, max_steps=64):
    """Rewrite every occurrence of the monomial ``target`` using ``relation``.

    ``relation = a*target + rest`` is read as ``target -> -rest/a``.  When ``a``
    is a nonzero rational the rewrite is exact; otherwise ``p`` is multiplied
    by ``a`` at each step (pseudo-reduction).  Returns ``(result, multiplier)``
    with ``multiplier * p - result`` in the ideal generated by ``relation``.
    """
    ring = p.ring
    key = _target_key(ring, target)
    a, rest = relation.part_divisible_by(key)
    if not a:
        raise ValueError("relation does not contain the target monomial")
    exact = a.is_constant()
    inv = 1 / a.constant_value() if exact else None
    multiplier = ring.one()
    cur = p
    for _ in range(max_steps):
        q, r0 = cur.part_divisible_by(key)
        if not q:
            return cur, multiplier
        if exact:
            cur = r0 - q * rest * inv
        else:
            # a*cur - q*relation = a*r0 + q*(a*target - relation) = a*r0 - q*rest
            cur = a * r0 - q * rest
            multiplier = multiplier * a
    raise RuntimeError("rewrite did not terminate")


def proportionality(engine, printed):
    """Rational ``k`` such that ``engine`` and ``k * printed`` agree on most terms.

    Among the monomials the two share, the coefficient ratio that occurs most
    often wins; ties go to the ratio met first in descending key order.  For
    proportional inputs this is the exact multiple.  Returns ``None`` if the
    inputs share no monomial.
    """
    if not engine or not printed:
        return None
    counts = {}
    first = {}
    shared = sorted((k for k in engine.keys() if k in printed._t), reverse=True)
    if not shared:
        return None
    for i, key in enumerate(shared):
        ratio = as_rational(engine._t[key]) / as_rational(printed._t[key])
        counts[ratio] = counts.get(ratio, 0) + 1
        first.setdefault(ratio, i)
    return max(counts, key=lambda r: (counts[r], -first[r]))


def compare_up_to_multiple(engine, printed):
    """Return ``(k, residual)`` with residual ``engine - k*printed``."""
    k = proportionality(engine, printed)
    if k is None:
        return None, engine - printed
    return k, engine - printed * k


def strip_factor(p, factor):
    """Divide out ``factor`` as often as possible; returns (multiplicity, rest)."""
    try:
        return p.multiplicity_of(factor)
    except NotDivisible:
        return 0, p
