"""Exact arithmetic kernel: rationals, sparse polynomials, derivations, elimination."""

from .certificate import CERTIFIED, DISCREPANCY, ERROR, Certificate, certify, run_certificate
from .derivation import DerivationTable, derive
from .elim import coefficient_of, compare_up_to_multiple, eliminate_pair, reduce_by
from .fraction import MonoFraction
from .poly import (
    MINUS_INFINITY,
    MissingAssignment,
    NotDivisible,
    Poly,
    Ring,
    Symbol,
    UnregisteredSymbol,
    eval_exact,
    jet,
    leading_coefficient,
    normalize,
    param,
)
from .rational import ExactRational, as_rational, format_rational
from .univariate import UPoly, real_root_intervals, resultant

__all__ = [
    "CERTIFIED", "DISCREPANCY", "ERROR", "Certificate", "certify", "run_certificate",
    "DerivationTable", "derive", "coefficient_of", "compare_up_to_multiple",
    "eliminate_pair", "reduce_by", "MonoFraction", "MINUS_INFINITY",
    "MissingAssignment", "NotDivisible", "Poly", "Ring", "Symbol",
    "UnregisteredSymbol", "eval_exact", "jet", "leading_coefficient", "normalize",
    "param", "ExactRational", "as_rational", "format_rational", "UPoly",
    "real_root_intervals", "resultant",
]
