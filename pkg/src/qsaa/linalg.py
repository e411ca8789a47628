"""Exact sparse linear algebra over Q(zeta_l).

Vectors are dicts {index: nonzero CycloNum}; matrices are lists of such
row dicts (row i of A = A[i]), acting on row vectors from the right.
Everything is exact; the echelon accumulator keeps a fully reduced
(Gauss-Jordan) basis so membership tests and coordinates are canonical.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .cyclo import CycloNum
from .errors import SingularMatrixError

Vec = dict  # {int: CycloNum}
Mat = list  # [Vec, ...]


def vec_add_scaled(u: Vec, v: Vec, c: CycloNum) -> Vec:
    """u + c*v as a new dict with zero entries dropped."""
    out = dict(u)
    for j, x in v.items():
        s = out.get(j)
        s = c * x if s is None else s + c * x
        if s.is_zero():
            out.pop(j, None)
        else:
            out[j] = s
    return out

def vec_scale(v: Vec, c: CycloNum) -> Vec:
    if c.is_zero():
        return {}
    return {j: c * x for j, x in v.items()}

def vec_mat(v: Vec, a: Mat) -> Vec:
    """Row vector times matrix."""
    out: Vec = {}
    for i, x in v.items():
        row = a[i]
        if not row:
            continue
        for j, y in row.items():
            s = out.get(j)
            s = x * y if s is None else s + x * y
            if s.is_zero():
                out.pop(j, None)
            else:
                out[j] = s
    return out

def mat_mul(a: Mat, b: Mat) -> Mat:
    return [vec_mat(row, b) for row in a]

def mat_add(a: Mat, b: Mat, c: CycloNum | None = None) -> Mat:
    """a + b, or a + c*b when a scale is given."""
    if c is None:
        return [vec_add_scaled(ra, rb, _one_like(a, b)) for ra, rb in zip(a, b)]
    return [vec_add_scaled(ra, rb, c) for ra, rb in zip(a, b)]

def _one_like(a: Mat, b: Mat) -> CycloNum:
    for m in (a, b):
        for row in m:
            for x in row.values():
                return CycloNum.one(x.l)
    raise ValueError("cannot infer root order from zero matrices")

def mat_sub(a: Mat, b: Mat) -> Mat:
    out = []
    for ra, rb in zip(a, b):
        row = dict(ra)
        for j, x in rb.items():
            s = row.get(j)
            s = -x if s is None else s - x
            if s.is_zero():
                row.pop(j, None)
            else:
                row[j] = s
        out.append(row)
    return out

def mat_scale(a: Mat, c: CycloNum) -> Mat:
    return [vec_scale(row, c) for row in a]

def mat_eq(a: Mat, b: Mat) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))

def identity(n: int, l: int) -> Mat:
    one = CycloNum.one(l)
    return [{i: one} for i in range(n)]

def zero_mat(n: int) -> Mat:
    return [{} for _ in range(n)]

def mat_pow(a: Mat, k: int, l: int) -> Mat:
    out = identity(len(a), l)
    for _ in range(k):
        out = mat_mul(out, a)
    return out

def transpose(a: Mat, ncols: int) -> Mat:
    out: Mat = [{} for _ in range(ncols)]
    for i, row in enumerate(a):
        for j, x in row.items():
            out[j][i] = x
    return out

def mat_trace(a: Mat, l: int) -> CycloNum:
    t = CycloNum.zero(l)
    for i, row in enumerate(a):
        x = row.get(i)
        if x is not None:
            t = t + x
    return t

def mat_dense(a: Mat, ncols: int, l: int) -> list[list[CycloNum]]:
    zero = CycloNum.zero(l)
    return [[row.get(j, zero) for j in range(ncols)] for row in a]

def mat_from_dense(rows: Sequence[Sequence[CycloNum]]) -> Mat:
    return [{j: x for j, x in enumerate(row) if not x.is_zero()} for row in rows]

def flatten_mat(a: Mat, ncols: int) -> Vec:
    out: Vec = {}
    for i, row in enumerate(a):
        base = i * ncols
        for j, x in row.items():
            out[base + j] = x
    return out

def unflatten(v: Vec, nrows: int, ncols: int) -> Mat:
    out: Mat = [{} for _ in range(nrows)]
    for p, x in v.items():
        out[p // ncols][p % ncols] = x
    return out

def mat_is_scalar(a: Mat, n: int, l: int) -> CycloNum | None:
    """The scalar c if a == c*I, else None."""
    c = a[0].get(0, CycloNum.zero(l)) if n else CycloNum.zero(l)
    for i, row in enumerate(a):
        if len(row) != (0 if c.is_zero() else 1) or (row and row.get(i) != c):
            return None
    return c

def mat_inv(a: Mat, n: int, l: int) -> Mat:
    """Inverse by Gauss-Jordan on [a | I]; raises if singular."""
    work = [dict(row) for row in a]
    inv = identity(n, l)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if col in work[r]:
                piv = r
                break
        if piv is None:
            raise SingularMatrixError(f"matrix is singular at column {col}")
        work[col], work[piv] = work[piv], work[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        c = work[col][col].inv()
        work[col] = vec_scale(work[col], c)
        inv[col] = vec_scale(inv[col], c)
        for r in range(n):
            if r != col:
                x = work[r].get(col)
                if x is not None:
                    work[r] = vec_add_scaled(work[r], work[col], -x)
                    inv[r] = vec_add_scaled(inv[r], inv[col], -x)
    return inv


class Echelon:
    """Reduced row-echelon accumulator over Q(zeta_l).

    Rows are kept fully inter-reduced with unit pivots, so the stored
    basis is canonical for the spanned subspace.
    """

    def __init__(self, ncols: int, l: int):
        self.ncols = ncols
        self.l = l
        self.rows: list[Vec] = []
        self.pivots: list[int] = []
        self._pivot_of: dict[int, int] = {}  # pivot column -> row index

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vec) -> Vec:
        """Residual of vec against the current basis (vec untouched)."""
        out = dict(vec)
        while True:
            hit = None
            for j in out:
                r = self._pivot_of.get(j)
                if r is not None:
                    hit = (j, r)
                    break
            if hit is None:
                return out
            j, r = hit
            out = vec_add_scaled(out, self.rows[r], -out[j])

    def add(self, vec: Vec) -> Vec | None:
        """Insert vec's residual if independent; return it, else None."""
        res = self.reduce(vec)
        if not res:
            return None
        piv = min(res)
        res = vec_scale(res, res[piv].inv())
        for r, row in enumerate(self.rows):
            x = row.get(piv)
            if x is not None:
                self.rows[r] = vec_add_scaled(row, res, -x)
        self._pivot_of[piv] = len(self.rows)
        self.rows.append(res)
        self.pivots.append(piv)
        return res

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)

    def canonical_rows(self) -> list[Vec]:
        order = sorted(range(len(self.rows)), key=lambda r: self.pivots[r])
        return [self.rows[r] for r in order]


def nullspace_with_frees(rows: Iterable[Vec], ncols: int, l: int) -> tuple[list[Vec], list[int]]:
    """Nullspace basis plus the free columns the basis is indexed by.

    Basis vector k has value 1 at free column k and 0 at every other free
    column, so the coordinates of any solution are its values there.
    """
    ech = Echelon(ncols, l)
    for row in rows:
        ech.add(row)
    bound = set(ech._pivot_of)
    one = CycloNum.one(l)
    basis = []
    frees = []
    for free in range(ncols):
        if free in bound:
            continue
        vec: Vec = {free: one}
        for piv, r in ech._pivot_of.items():
            x = ech.rows[r].get(free)
            if x is not None:
                vec[piv] = -x
        basis.append(vec)
        frees.append(free)
    return basis, frees


def nullspace(rows: Iterable[Vec], ncols: int, l: int) -> list[Vec]:
    """Basis of {x : row . x = 0 for every equation row}.

    Equations are sparse rows over unknowns 0..ncols-1.
    """
    return nullspace_with_frees(rows, ncols, l)[0]


def solve_affine(rows: list[Vec], rhs: list[CycloNum], ncols: int, l: int) -> Vec | None:
    """One solution of the sparse system rows . x = rhs, or None.

    Encoded by appending the negated right-hand side as an extra column
    and looking for a kernel vector with last coordinate 1.
    """
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if not b.is_zero():
            r[ncols] = -b
        aug.append(r)
    ech = Echelon(ncols + 1, l)
    for row in aug:
        ech.add(row)
    if ncols in ech._pivot_of:
        return None  # inconsistent: a pivot in the rhs column
    sol: Vec = {}
    for piv, r in ech._pivot_of.items():
        x = ech.rows[r].get(ncols)
        if x is not None:
            sol[piv] = -x
    return sol


def rank(rows: Iterable[Vec], ncols: int, l: int) -> int:
    ech = Echelon(ncols, l)
    for row in rows:
        ech.add(row)
    return ech.dim
