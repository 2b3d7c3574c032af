"""Vandermonde determinants and the homogeneous weighted power-sum system."""

from dataclasses import dataclass
from itertools import permutations

from gmpy2 import mpq

from ..exact.poly import Poly, Ring, jet
from ..exact.rational import as_rational


def node_ring(k):
    return Ring([jet(f"u{i}") for i in range(1, k + 1)])


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def vandermonde_det(k, ring=None):
    """Determinant of the matrix whose column ``j`` is ``(1, u_j, ..., u_j^{k-1})``.

    Expanded by the permutation formula; every entry is a monomial, so the
    expansion is a signed sum of ``k!`` monomials.
    """
    if not 1 <= k <= 6:
        raise ValueError("k must lie in 1..6")
    ring = ring or node_ring(k)
    out = {}
    for perm in permutations(range(k)):
        # entry (row r, column perm[r]) is u_{perm[r]}^r
        key = 0
        for r, col in enumerate(perm):
            key += r * ring.unit[ring.index[f"u{col + 1}"]]
        out[key] = out.get(key, 0) + _perm_sign(perm)
    return Poly(ring, {key: mpq(v) for key, v in out.items() if v})


def vandermonde_product(k, ring=None):
    ring = ring or node_ring(k)
    out = ring.one()
    for i in range(1, k + 1):
        for j in range(1, i):
            out = out * (ring.var(f"u{i}") - ring.var(f"u{j}"))
    return out


def det_gauss(matrix):
    """Exact determinant of a rational matrix by Gaussian elimination."""
    a = [[as_rational(x) for x in row] for row in matrix]
    n = len(a)
    det = mpq(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return mpq(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def det_cofactor(matrix):
    """Exact determinant by first-row cofactor expansion (independent route)."""
    n = len(matrix)
    if n == 1:
        return as_rational(matrix[0][0])
    total = mpq(0)
    for j in range(n):
        if not matrix[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = as_rational(matrix[0][j]) * det_cofactor(minor)
        total += term if j % 2 == 0 else -term
    return total


def vandermonde_matrix(nodes):
    k = len(nodes)
    return [[as_rational(u) ** r for u in nodes] for r in range(k)]


@dataclass(frozen=True)
class PowerSumSystem:
    """Rows ``sum_k n_k u_k^r x_k = 0`` for ``r = 0..K-1``.

    ``nodes`` are the values ``u_k`` (rationals, or symbol names for a
    symbolic system) and ``multiplicities`` the positive weights ``n_k``.
    """

    nodes: tuple
    multiplicities: tuple

    def __post_init__(self):
        if len(self.nodes) != len(self.multiplicities):
            raise ValueError("one multiplicity per node")
        if not 1 <= len(self.nodes) <= 5:
            raise ValueError("at most five distinct nodes")

    @property
    def symbolic(self):
        return any(isinstance(u, str) for u in self.nodes)

    def matrix(self):
        return [
            [as_rational(m) * as_rational(u) ** r for u, m in zip(self.nodes, self.multiplicities)]
            for r in range(len(self.nodes))
        ]


@dataclass(frozen=True)
class Verdict:
    kind: str
    witness: object
    assumptions: tuple
    solution: tuple = ()

    @property
    def unique(self):
        return self.kind == "unique zero solution"


def _nullspace_vector(matrix):
    """A nonzero kernel vector of a singular rational matrix, by reduction."""
    a = [[as_rational(x) for x in row] for row in matrix]
    rows, cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    if not free:
        return None
    vec = [mpq(0)] * cols
    vec[free[0]] = mpq(1)
    for i, c in enumerate(pivots):
        vec[c] = -a[i][free[0]]
    return tuple(vec)


def solve_vanishing_system(system: PowerSumSystem) -> Verdict:
    """Decide whether the homogeneous system forces every unknown to vanish."""
    k = len(system.nodes)
    for m in system.multiplicities:
        if not isinstance(m, str) and as_rational(m) <= 0:
            raise ValueError("multiplicities must be positive")
    if system.symbolic:
        ring = node_ring(k)
        names = [f"u{i}" for i in range(1, k + 1)]
        det = vandermonde_det(k, ring)
        assumptions = tuple(f"{names[i]} != {names[j]}" for j in range(k) for i in range(j + 1, k))
        assumptions += ("every multiplicity > 0",)
        return Verdict("unique zero solution", det, assumptions, tuple([0] * k))
    nodes = [as_rational(u) for u in system.nodes]
    for i in range(k):
        for j in range(i):
            if nodes[i] == nodes[j]:
                ring = node_ring(k)
                witness = ring.var(f"u{i + 1}") - ring.var(f"u{j + 1}")
                return Verdict("singular", witness, (f"u{i + 1} = u{j + 1}",),
                               _nullspace_vector(system.matrix()))
    det = det_gauss(system.matrix())
    if det == 0:
        return Verdict("singular", det, (), _nullspace_vector(system.matrix()))
    return Verdict("unique zero solution", det,
                   ("nodes pairwise distinct", "every multiplicity > 0"), tuple([mpq(0)] * k))


def vandermonde_certificates():
    """``vandermonde-k1..k6`` plus the distinct-node and repeated-node verdicts."""
    from ..exact.certificate import run_certificate, run_comparison

    certs = []
    for k in range(1, 7):
        def build(k=k):
            ring = node_ring(k)
            return vandermonde_det(k, ring), vandermonde_product(k, ring), (f"{k}! permutation terms",)
        certs.append(run_comparison(f"vandermonde-k{k}", f"det V_{k} = prod_(j<i) (u_i - u_j)",
                                    build, ("rows are powers 0..k-1 of the nodes",),
                                    up_to_multiple=False))

    def distinct():
        ring = node_ring(5)
        sym = solve_vanishing_system(PowerSumSystem(tuple(f"u{i}" for i in range(1, 6)), (1,) * 5))
        num = solve_vanishing_system(PowerSumSystem((1, 2, 3, 4, 5), (1, 2, 1, 3, 1)))
        ok = sym.unique and num.unique and num.witness != 0
        residual = ring.zero() if ok else ring.one()
        return residual, None, (f"numeric witness det = {num.witness}",
                                "symbolic witness is the k = 5 Vandermonde determinant")

    certs.append(run_certificate("system-distinct", "distinct nodes force the zero solution",
                                 distinct, ("u_i pairwise distinct", "every n_k > 0")))

    def repeated():
        ring = node_ring(5)
        v = solve_vanishing_system(PowerSumSystem((1, 1, 3, 4, 5), (1, 1, 1, 1, 1)))
        expected = ring.var("u2") - ring.var("u1")
        ok = v.kind == "singular" and v.witness == expected
        return (ring.zero() if ok else ring.one()), None, (f"witness {v.witness}",)

    certs.append(run_certificate("system-repeated", "a repeated node makes the system singular",
                                 repeated, ("u_1 = u_2",)))
    return certs
