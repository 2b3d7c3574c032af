"""Printed relations of the curve argument, transcribed verbatim.

Every relation ``lhs = rhs`` is stored as the polynomial ``lhs - rhs`` over
the ring ``(lambda1, E, phi, psi, n, c, R)`` where ``E`` is the first
derivative of ``lambda1`` along the curve.  Nothing here is derived; these are
the independent targets that the engine's derivations are compared with.
"""

from functools import lru_cache

from ..exact.poly import Ring, jet, param


@lru_cache(maxsize=None)
def curve_ring():
    return Ring([
        jet("lambda1"), jet("E", 1, "lambda1"), jet("phi"), jet("psi"),
        param("n"), param("c"), param("R"),
    ])


def _syms():
    ring = curve_ring()
    return ring, ring.vars("lambda1", "E", "phi", "psi", "n", "c", "R")


@lru_cache(maxsize=None)
def a_table():
    ring, (l, E, f, p, n, c, R) = _syms()
    return {
        "a1": (97 * n ** 2 - 111 * n + 60) * c - 105 * R,
        "a2": ((4 * n ** 2 - 9 * n + 9) * c - 6 * R) * (n * (n - 1) * c - R),
        "a3": 12 * R - (4 * n ** 2 - 6 * n + 21) * c,
        "a4": 3 * n * (n - 4) * (n - 2) * c,
    }


def K():
    ring, (l, E, f, p, n, c, R) = _syms()
    return R - n * (n - 1) * c - 6 * l ** 2


def rhs_quadratic_bracket():
    """``6R - (4n^2 - 12n - 3)c - 27 lambda1^2`` as printed."""
    ring, (l, E, f, p, n, c, R) = _syms()
    return 6 * R - (4 * n ** 2 - 12 * n - 3) * c - 27 * l ** 2


@lru_cache(maxsize=None)
def p_table():
    ring, (l, E, f, p, n, c, R) = _syms()
    return {
        "p1": (n - 4) * K(),
        "p2": (n - 4) * (n + 2) * l,
        "p3": l * rhs_quadratic_bracket(),
    }


@lru_cache(maxsize=None)
def h_table():
    ring, (l, E, f, p, n, c, R) = _syms()
    a = a_table()
    return {
        "h1": 432 * l ** 4 + a["a1"] * l ** 2 + a["a2"],
        "h2": -54 * (n + 3) * l ** 3 + a["a3"] * l,
        "h3": 12 * (n - 4) * l ** 3 + a["a4"] * l,
    }


@lru_cache(maxsize=None)
def q_table():
    ring, (l, E, f, p, n, c, R) = _syms()
    a = a_table()
    h = h_table()
    dh1 = 1728 * l ** 3 + 2 * a["a1"] * l
    lin4 = 36 * (n - 4) * l ** 2 + a["a4"]
    return {
        "q1": (n - 4) * dh1 * K() + 3 * (n - 4) * h["h1"] * l,
        "q2": (n - 4) * (n + 2) * l * dh1 + 3 * (n - 4) * h["h1"] + 3 * (n - 4) * h["h2"] * l,
        "q3": 3 * (n - 4) * h["h2"],
        "q4": (n - 4) * lin4 * K(),
        "q5": -(n - 4) * (n + 2) * lin4 * l,
        "q6": (-3 * (n - 4) * h["h1"] * l
               + l * (-162 * (n + 3) * l ** 2 + a["a3"]) * rhs_quadratic_bracket()
               + 3 * c * (n - 4) * h["h2"]),
    }


@lru_cache(maxsize=None)
def PQ_table():
    q = q_table()
    h = h_table()
    pt = p_table()
    q1, q2, q3, q4, q5, q6 = (q[f"q{i}"] for i in range(1, 7))
    h1, h2, h3 = h["h1"], h["h2"], h["h3"]
    p1, p2, p3 = pt["p1"], pt["p2"], pt["p3"]
    return {
        "P1": q1 * h2 ** 2 - q2 * h1 * h2 + q3 * h1 ** 2,
        "P2": -2 * q1 * h2 * h3 + q2 * h1 * h3 - q4 * h1 * h2 + q5 * h1 ** 2,
        "P3": -q1 * h3 ** 2 - q4 * h1 * h3 - q6 * h1 ** 2,
        "Q1": p2 * h1 - p1 * h2,
        "Q2": p1 * h3,
        "Q3": p3 * h1,
    }


# -- relations (lhs - rhs) -------------------------------------------------------

def closure():
    """``3E = K phi + (n+2) lambda1 psi``."""
    ring, (l, E, f, p, n, c, R) = _syms()
    return 3 * E - K() * f - (n + 2) * l * p


def second_derivative_rhs():
    """Printed second derivative of lambda1 along the curve."""
    ring, (l, E, f, p, n, c, R) = _syms()
    return E * (-3 * l * f + (n - 1) * p) + l * (n * (n - 2) * c - R + 4 * l ** 2)


def phi_derivative():
    ring, (l, E, f, p, n, c, R) = _syms()
    return l * (f ** 2 + 1) + f * p


def psi_derivative():
    ring, (l, E, f, p, n, c, R) = _syms()
    return p * (l * f + p) + c


def connection_sum():
    """Sum of the connection values: ``-3 lambda1 phi + (n-1) psi``."""
    ring, (l, E, f, p, n, c, R) = _syms()
    return -3 * l * f + (n - 1) * p


def e_psi_constraint():
    """``3(n-4) E psi = lambda1 (6R - (4n^2-12n-3)c - 27 lambda1^2)``."""
    ring, (l, E, f, p, n, c, R) = _syms()
    return 3 * (n - 4) * E * p - l * rhs_quadratic_bracket()


def phi_psi_quadric():
    ring, (l, E, f, p, n, c, R) = _syms()
    return (n - 4) * (K() * f * p + (n + 2) * l * p ** 2) - l * rhs_quadratic_bracket()


def linear_phi_psi():
    ring, (l, E, f, p, n, c, R) = _syms()
    a = a_table()
    return ((432 * l ** 4 + a["a1"] * l ** 2 + a["a2"]) * f
            + (-54 * (n + 3) * l ** 3 + a["a3"] * l) * p
            - (12 * (n - 4) * l ** 3 + a["a4"] * l))


def derived_quadric_expanded():
    """The relation obtained from the linear one before regrouping by monomials."""
    ring, (l, E, f, p, n, c, R) = _syms()
    a = a_table()
    h = h_table()
    dh1 = 1728 * l ** 3 + 2 * a["a1"] * l
    lhs = ((n - 4) * dh1 * f * (K() * f + (n + 2) * l * p)
           + 3 * (n - 4) * h["h1"] * (l * (f ** 2 + 1) + f * p)
           + l * (-162 * (n + 3) * l ** 2 + a["a3"]) * rhs_quadratic_bracket()
           + 3 * (n - 4) * h["h2"] * (p * (l * f + p) + c))
    rhs = (n - 4) * (36 * (n - 4) * l ** 2 + a["a4"]) * (K() * f + (n + 2) * l * p)
    return lhs - rhs


def derived_quadric():
    ring, (l, E, f, p, n, c, R) = _syms()
    q = q_table()
    return (q["q1"] * f ** 2 + q["q2"] * f * p + q["q3"] * p ** 2
            + q["q4"] * f + q["q5"] * p + q["q6"])


def pq_form():
    ring, (l, E, f, p, n, c, R) = _syms()
    t = p_table()
    return t["p1"] * f * p + t["p2"] * p ** 2 - t["p3"]


def h_form():
    ring, (l, E, f, p, n, c, R) = _syms()
    h = h_table()
    return h["h1"] * f + h["h2"] * p - h["h3"]


def psi_quadratic_P():
    ring, (l, E, f, p, n, c, R) = _syms()
    t = PQ_table()
    return t["P1"] * p ** 2 + t["P2"] * p - t["P3"]


def psi_quadratic_Q():
    ring, (l, E, f, p, n, c, R) = _syms()
    t = PQ_table()
    return t["Q1"] * p ** 2 + t["Q2"] * p - t["Q3"]


def _AB():
    t = PQ_table()
    A = t["P2"] * t["Q1"] - t["P1"] * t["Q2"]
    B = t["P3"] * t["Q1"] - t["P1"] * t["Q3"]
    return A, B


def psi_linear():
    ring, (l, E, f, p, n, c, R) = _syms()
    A, B = _AB()
    return A * p - B


def psi_linear_combined():
    ring, (l, E, f, p, n, c, R) = _syms()
    t = PQ_table()
    A, B = _AB()
    return (t["P1"] * B + t["P2"] * A) * p - t["P3"] * A


def final_eliminant():
    t = PQ_table()
    A, B = _AB()
    return t["P1"] * B * B + t["P2"] * A * B - t["P3"] * A * A


# -- printed leading terms and top coefficient ------------------------------------

def printed_leading_terms():
    """``name -> (coefficient polynomial in n, degree in lambda1)``."""
    ring, (l, E, f, p, n, c, R) = _syms()
    return {
        "P1": (-10077696 * (n - 4) * (n + 3) * (n - 1), 11),
        "P2": (-839808 * (n - 4) ** 2 * (11 * n + 5), 11),
        "P3": (-69984 * (19 * n + 113), 13),
        "Q1": (108 * (n - 4) * (n - 1), 5),
        "Q2": (-72 * (n - 4) ** 2, 5),
        "Q3": (ring.const(-11664), 7),
    }


PRINTED_TOP_DEGREE = 47


def printed_bracket():
    ring, (l, E, f, p, n, c, R) = _syms()
    return 69984 * 108 * (19 * n + 113) + 10077696 * 11664 * (n + 3)


def printed_top_coefficient_factors():
    """The printed top coefficient as ``(constant, [(factor, power), ...])``."""
    ring, (l, E, f, p, n, c, R) = _syms()
    return -10077696, [
        (n - 4, 2),
        (n + 3, 1),
        (n - 1, 2),
        (printed_bracket(), 2),
    ]


def printed_top_coefficient():
    const, factors = printed_top_coefficient_factors()
    out = curve_ring().const(const)
    for f, k in factors:
        out = out * f ** k
    return out
