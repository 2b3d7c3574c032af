"""Exact rational scalars.

Coefficients are ``gmpy2.mpq`` values: arbitrary precision, always stored in
lowest terms with a positive denominator, zero represented as ``0/1``.
"""

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq, mpz

ExactRational = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)


def as_rational(value):
    """Coerce ``value`` to an exact rational.

    Accepts ints, ``Fraction``/``mpq`` values and strings such as ``"-7/3"``.
    Floats are rejected so that no rounding ever sneaks into an exact path.
    """
    if isinstance(value, ExactRational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, type(mpz(0)))):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            if int(den) == 0:
                raise ZeroDivisionError(f"zero denominator in {value!r}")
            return mpq(int(num), int(den))
        return mpq(int(text))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q):
    """Render as ``"num/den"`` (the denominator is always printed)."""
    q = as_rational(q)
    return f"{q.numerator}/{q.denominator}"


def short_rational(q):
    """Render as ``"num"`` when integral, else ``"num/den"``."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_fraction(q):
    q = as_rational(q)
    return Fraction(int(q.numerator), int(q.denominator))
