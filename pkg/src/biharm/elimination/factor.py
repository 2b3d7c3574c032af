"""Trial factor extraction for univariate integer polynomials.

Linear factors are found from isolated real roots: each root interval is
refined, the nearest fraction with a denominator dividing the leading
coefficient is tried, and only exact hits count.  Whatever is left over is
kept as a single cofactor.
"""

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from ..exact.univariate import UPoly, real_root_intervals, refine
from . import transcribed as tr


def _normalized(u):
    """Primitive integer form with positive leading coefficient, and the scale removed."""
    prim = u.primitive()
    if prim.lc() < 0:
        prim = -prim
    return prim, u.lc() / prim.lc()


def _fmt_factor(u, var="n"):
    terms = []
    for i in range(u.degree, -1, -1):
        c = u.c[i]
        if not c:
            continue
        mag = abs(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        terms.append(("-" if c < 0 else "+", body))
    text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return f"({text})"


@dataclass
class FactorReport:
    constant: object
    factors: list  # [(UPoly, multiplicity)], each primitive with positive lc
    var: str = "n"

    def describe(self):
        parts = [str(self.constant)]
        for f, m in self.factors:
            parts.append(_fmt_factor(f, self.var) + (f"^{m}" if m > 1 else ""))
        return " * ".join(parts)

    def multiplicity(self, factor):
        prim, _ = _normalized(factor)
        for f, m in self.factors:
            if f == prim:
                return m
        return 0

    def as_dict(self):
        return {
            "constant": str(self.constant),
            "factors": [{"factor": _fmt_factor(f, self.var)[1:-1], "power": m}
                        for f, m in self.factors],
        }


def rational_roots(u):
    """Exact rational roots of ``u`` found through real-root isolation."""
    if u.degree <= 0:
        return []
    prim, _ = _normalized(u)
    sf = prim.squarefree_part().primitive()
    lead = abs(int(prim.lc()))
    out = []
    for lo, hi in real_root_intervals(sf):
        if lo == hi:
            out.append(mpq(lo))
            continue
        a, b = refine(sf, lo, hi, mpq(1, 2 ** 64 * max(lead, 1) ** 2))
        if a == b:
            out.append(mpq(a))
            continue
        mid = Fraction(int((a + b).numerator), int((a + b).denominator) * 2)
        cand = mid.limit_denominator(max(lead, 1))
        q = mpq(cand.numerator, cand.denominator)
        if not sf(q):
            out.append(q)
    return out


def analyse_univariate(p, var="n"):
    """Constant times linear factors (with multiplicities) times a cofactor."""
    u = UPoly.from_poly(p, var)
    if not u:
        raise ValueError("zero polynomial")
    rest = u
    factors = []
    for r in rational_roots(u):
        lin = UPoly([-r.numerator, r.denominator])
        m, rest = rest.multiplicity(lin)
        if m:
            factors.append((lin, m))
    if rest.degree > 0:
        prim, scale = _normalized(rest)
        factors.append((prim, 1))
        const = scale
    else:
        const = rest.lc()
    factors.sort(key=lambda t: (t[0].degree, [-x for x in t[0].c]))
    return FactorReport(const, factors, var)


def printed_factor_report():
    const, pieces = tr.printed_top_coefficient_factors()
    out = mpq(const)
    factors = []
    for poly, m in pieces:
        prim, scale = _normalized(UPoly.from_poly(poly, "n"))
        out *= scale ** m
        factors.append((prim, m))
    factors.sort(key=lambda t: (t[0].degree, [-x for x in t[0].c]))
    return FactorReport(out, factors, "n")


def extract(p, factor, var="n"):
    """Multiplicity of ``factor`` in ``p`` by repeated exact division."""
    u = UPoly.from_poly(p, var) if not isinstance(p, UPoly) else p
    f = UPoly.from_poly(factor, var) if not isinstance(factor, UPoly) else factor
    m, _ = u.multiplicity(f)
    return m


def structured_diff(printed, computed):
    """Factor-by-factor comparison lines ``factor: printed ^a, computed ^b``."""
    lines = []
    seen = []
    for f, m in printed.factors + computed.factors:
        if any(f == g for g in seen):
            continue
        seen.append(f)
        a, b = printed.multiplicity(f), computed.multiplicity(f)
        tag = "same" if a == b else "differs"
        lines.append(f"factor {_fmt_factor(f)}: printed ^{a}, computed ^{b} ({tag})")
    tag = "same" if printed.constant == computed.constant else "differs"
    lines.append(f"constant: printed {printed.constant}, computed {computed.constant} ({tag})")
    return lines


def diff_records(printed, computed):
    """Machine-readable form of :func:`structured_diff`."""
    out = []
    seen = []
    for f, m in printed.factors + computed.factors:
        if any(f == g for g in seen):
            continue
        seen.append(f)
        out.append({"factor": _fmt_factor(f)[1:-1], "printed": printed.multiplicity(f),
                    "computed": computed.multiplicity(f)})
    return {"factors": out, "constant": {"printed": str(printed.constant),
                                         "computed": str(computed.constant)}}


def nonvanishing_on_range(p, var, lo, hi):
    """Integers in ``[lo, hi]`` where ``p`` (univariate in ``var``) vanishes exactly."""
    u = UPoly.from_poly(p, var) if not isinstance(p, UPoly) else p
    return [k for k in range(lo, hi + 1) if not u(k)]
