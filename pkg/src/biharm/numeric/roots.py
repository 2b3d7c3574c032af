"""Real roots of the final polynomial at fixed parameters."""

from dataclasses import dataclass

from ..exact.univariate import UPoly, real_root_intervals, refine, sign_changes, sturm_sequence
from .integrate import exact


class DegenerateLeading(ValueError):
    pass


@dataclass(frozen=True)
class RootReport:
    intervals: tuple  # ((lo, hi), ...) exact rationals; lo == hi marks an exact root
    degree: int

    @property
    def count(self):
        return len(self.intervals)


def specialise(fp, params):
    """The final polynomial in ``lambda1`` at ``params = (n, c, R)``."""
    n, c, R = (exact(v) for v in params)
    spec = {"n": n, "c": c, "R": R}
    poly = fp.poly if hasattr(fp, "poly") else fp
    top = fp.top if hasattr(fp, "top") else None
    if top is not None and not top.specialize(spec).evaluate({}):
        raise DegenerateLeading(f"top coefficient vanishes at (n, c, R) = {params}")
    sub = poly.specialize(spec)
    return UPoly.from_poly(sub, "lambda1")


def real_roots(fp, params, width=None):
    """Sturm isolation of every real root; intervals optionally refined below ``width``."""
    u = specialise(fp, params)
    if not u:
        raise DegenerateLeading("polynomial vanishes identically")
    sf = u.squarefree_part()
    out = []
    for lo, hi in real_root_intervals(u):
        if width is not None and lo != hi:
            lo, hi = refine(sf, lo, hi, width)
        out.append((lo, hi))
    return RootReport(tuple(out), u.degree)


def sign_change_count(u, bound):
    """Independent count: Sturm sign changes at ``-bound`` minus those at ``+bound``."""
    seq = sturm_sequence(u.squarefree_part().primitive())
    return sign_changes([p(-bound) for p in seq]) - sign_changes([p(bound) for p in seq])
