"""PI degrees of quantum affine spaces from skew-symmetric integer matrices.

The PI degree of a quantum affine space whose relation matrix has
entries q^(h_ij) is prod_i m / gcd(h_i, m), one factor per 2x2 block of
the skew normal form of H = (h_ij), where m is the order of q.  A
brute-force count of the subgroup of (Z/m)^n generated by the rows of H
serves as an independent oracle: the PI degree equals sqrt of that
cardinality.

The two concrete exponent matrices used by the package are the 4x4
matrix for the quantum spatial ageing algebra and the 5x5 matrix for its
smash-product extension (equivalently the phi/psi subalgebra); both have
invariant factors 1, 1, 2, 2, giving PI degree l^2 for odd l and l^2/2
for even l.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .errors import InvalidOrderError, InvariantViolationError, ResourceLimitError

BRUTEFORCE_LIMIT = 10 ** 7


@dataclass(frozen=True)
class SkewIntMatrix:
    """A skew-symmetric integer matrix (validated on construction)."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise InvariantViolationError("matrix is not square")
            for j, x in enumerate(row):
                if x != -self.entries[j][i]:
                    raise InvariantViolationError(
                        f"not skew-symmetric at ({i}, {j})")

    @staticmethod
    def of(rows: Sequence[Sequence[int]]) -> "SkewIntMatrix":
        return SkewIntMatrix(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class SkewNormalForm:
    """Block-diagonal congruence form of a skew-symmetric matrix.

    ``factors`` lists one positive invariant factor per 2x2 block (each
    appears twice on the block anti-diagonal); ``transform`` U is
    unimodular with U H U^T equal to ``block_form``.
    """

    factors: tuple[int, ...]
    kernel_dim: int
    transform: tuple[tuple[int, ...], ...]
    block_form: tuple[tuple[int, ...], ...]

    @property
    def doubled_factors(self) -> tuple[int, ...]:
        out: list[int] = []
        for h in self.factors:
            out += [h, h]
        return tuple(out)


def _as_entries(h) -> list[list[int]]:
    if isinstance(h, SkewIntMatrix):
        return [list(row) for row in h.entries]
    return [list(row) for row in SkewIntMatrix.of(h).entries]


def skew_normal_form(h) -> SkewNormalForm:
    """Reduce a skew-symmetric integer matrix by unimodular congruence.

    Simultaneous row/column operations (so skew symmetry is preserved)
    bring the matrix to 2x2 blocks [[0, h_i], [-h_i, 0]] with
    h_1 | h_2 | ... followed by a zero block.  Pivots are chosen by
    minimal nonzero absolute value, which keeps intermediate entries
    small and guarantees termination.
    """
    m = _as_entries(h)
    n = len(m)
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_row_col(dst, src, c):
        # congruence op: R_dst += c*R_src and C_dst += c*C_src
        for j in range(n):
            m[dst][j] += c * m[src][j]
        for i in range(n):
            m[i][dst] += c * m[i][src]
        for j in range(n):
            u[dst][j] += c * u[src][j]

    def swap(i, j):
        if i == j:
            return
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]
        u[i], u[j] = u[j], u[i]

    def negate(i):
        for j in range(n):
            m[i][j] = -m[i][j]
        for r in range(n):
            m[r][i] = -m[r][i]
        u[i] = [-x for x in u[i]]

    t = 0
    while t + 1 < n:
        best = None
        for i in range(t, n):
            for j in range(i + 1, n):
                x = m[i][j]
                if x and (best is None or abs(x) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        swap(t, i)
        if j == t:
            j = i
        swap(t + 1, j)
        if m[t][t + 1] < 0:
            negate(t + 1)
        p = m[t][t + 1]
        # reduce the rest of the pivot rows modulo p
        clean = True
        for k in range(t + 2, n):
            if m[t][k]:
                add_row_col(k, t + 1, -(m[t][k] // p))
                if m[t][k]:
                    clean = False
            if m[t + 1][k]:
                add_row_col(k, t, m[t + 1][k] // p)
                if m[t + 1][k]:
                    clean = False
        if not clean:
            continue  # a remainder smaller than |p| appeared; re-pivot
        # divisibility chain: drag any non-multiple into the pivot rows
        bad = None
        for a in range(t + 2, n):
            for b in range(a + 1, n):
                if m[a][b] % p:
                    bad = a
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row_col(t, bad, 1)
            continue
        t += 2

    factors = tuple(m[k][k + 1] for k in range(0, t, 2))
    return SkewNormalForm(
        factors=factors,
        kernel_dim=n - 2 * len(factors),
        transform=tuple(tuple(row) for row in u),
        block_form=tuple(tuple(row) for row in m),
    )


def pi_degree_from_factors(factors: Sequence[int], m: int) -> int:
    """prod of m/gcd(h_i, m) over the distinct block factors h_i."""
    if m < 2:
        raise InvalidOrderError(f"need m >= 2, got {m}")
    out = 1
    for h in factors:
        out *= m // gcd(h, m)
    return out


def image_cardinality_bruteforce(h, m: int, limit: int = BRUTEFORCE_LIMIT) -> int:
    """Cardinality of the subgroup of (Z/m)^n generated by the rows of H.

    This is the image cardinality whose square root is the PI degree;
    enumeration is guarded by ``limit`` on m^n.
    """
    entries = _as_entries(h)
    n = len(entries)
    if m ** n > limit:
        raise ResourceLimitError(f"m^n = {m ** n} exceeds the guard {limit}")
    group = {(0,) * n}
    for row in entries:
        r = tuple(x % m for x in row)
        if not any(r):
            continue
        new = set()
        for s in group:
            for k in range(1, m):
                new.add(tuple((a + k * b) % m for a, b in zip(s, r)))
        group |= new
    return len(group)


#: Integer exponent matrix of the quantum affine space attached to the
#: quantum spatial ageing algebra (variables ordered X, Y, E, K).
QSAA_EXPONENTS = SkewIntMatrix.of([
    [0, 1, -1, -1],
    [-1, 0, 1, 1],
    [1, -1, 0, -2],
    [1, -1, 2, 0],
])

#: The same matrix after the three row/column replacement steps
#: (row/col 1 += row/col 2; row/col 3 += row/col 1; row/col 4 += row/col 1).
QSAA_EXPONENTS_REDUCED = SkewIntMatrix.of([
    [0, 1, 0, 0],
    [-1, 0, 0, 0],
    [0, 0, 0, -2],
    [0, 0, 2, 0],
])

#: Integer exponent matrix for the smash-product extension, read off the
#: 5x5 relation matrix of its phi/psi subalgebra (variables X, Y, phi, K, psi).
SMASH_EXPONENTS = SkewIntMatrix.of([
    [0, 1, -1, 0, 0],
    [-1, 0, 1, 1, -1],
    [1, -1, 0, 1, -1],
    [0, -1, -1, 0, 0],
    [0, 1, 1, 0, 0],
])


def _pideg_of_matrix(matrix: SkewIntMatrix, l: int) -> int:
    if l < 3:
        raise InvalidOrderError(f"need l >= 3, got {l}")
    return pi_degree_from_factors(skew_normal_form(matrix).factors, l)


def pideg_qsaa(l: int) -> int:
    """PI degree of the quantum spatial ageing algebra at order l."""
    return _pideg_of_matrix(QSAA_EXPONENTS, l)


def pideg_smash(l: int) -> int:
    """PI degree of the smash-product extension (= of its phi/psi subalgebra)."""
    return _pideg_of_matrix(SMASH_EXPONENTS, l)
