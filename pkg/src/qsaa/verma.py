"""Finite quotients of the Verma-style module induced from a character.

The inducing character lives on the subalgebra generated by E, X and
K^(+-l): it kills E and acts by lambda1 on X and lambda2 on K^l.  The
induced module has basis f(m, n) = v Y^m K^n with m >= 0 and
0 <= n < l; the coefficient of E vanishes on the rows m = 0 mod l,
which produces the invariant chain whose quotients are built here.

Only odd l is supported: the even case quotients by half-period rows
and has no displayed action to implement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclo import CycloNum, q_int, q_power
from .errors import InvalidOrderError, InvalidParameterError
from .linalg import Mat
from .pbw import QSAA, Gen
from .rep import (
    MatrixModule,
    Subspace,
    basis_vector,
    has_invariant_complement,
    is_indecomposable,
    is_simple,
    make_module,
    spin_up,
)


@dataclass(frozen=True)
class VermaParams:
    lam1: CycloNum
    lam2: CycloNum

    @staticmethod
    def of(l: int, values) -> "VermaParams":
        out = []
        for v in values:
            c = v if isinstance(v, CycloNum) else CycloNum.from_rational(l, Fraction(v))
            if c.is_zero():
                raise InvalidParameterError("character parameters must be nonzero")
            out.append(c)
        if len(out) != 2:
            raise InvalidParameterError("need exactly (lambda1, lambda2)")
        return VermaParams(*out)


@dataclass(frozen=True)
class QuotientSpec:
    l: int
    p: int

    def __post_init__(self):
        if self.l < 3 or self.l % 2 == 0:
            raise InvalidOrderError("quotients are built for odd l >= 3 only")
        if self.p < 1:
            raise InvalidParameterError(f"need p >= 1, got {self.p}")

    @property
    def dim(self) -> int:
        return self.p * self.l ** 2

    def labels(self) -> list[tuple[int, int]]:
        return [(m, n) for m in range(self.p * self.l) for n in range(self.l)]


def build_q(l: int, p: int, params) -> MatrixModule:
    """The p*l^2-dimensional quotient module for odd l.

    K wraps n = l-1 back to n = 0 with the scalar lambda2: the inducing
    character fixes v K^l = lambda2 v, and this is the unique wrap
    passing the relation check.
    """
    spec = QuotientSpec(l, p)
    pr = params if isinstance(params, VermaParams) else VermaParams.of(l, params)
    q = lambda k: q_power(l, k)
    lam2_inv = pr.lam2.inv()
    top = p * l - 1

    def idx(m, n):
        return m * l + n

    x_rows: Mat = []
    k_rows: Mat = []
    kinv_rows: Mat = []
    e_rows: Mat = []
    y_rows: Mat = []
    for m, n in spec.labels():
        x_rows.append({idx(m, n): pr.lam1 * q(n - m)})
        if n + 1 < l:
            k_rows.append({idx(m, n + 1): CycloNum.one(l)})
        else:
            k_rows.append({idx(m, 0): pr.lam2})
        if n:
            kinv_rows.append({idx(m, n - 1): CycloNum.one(l)})
        else:
            kinv_rows.append({idx(m, l - 1): lam2_inv})
        y_rows.append({} if m == top else {idx(m + 1, n): q(-n)})
        if m == 0:
            e_rows.append({})
        else:
            # the commutation of E past Y^m picks up vX = lambda1 v, so the
            # coefficient carries lambda1 (needed for the relation check to
            # pass off the lambda1 = 1 slice)
            c = -pr.lam1 * q(m + 2 * n) * q_int(l, m)
            e_rows.append({idx(m - 1, n): c} if not c.is_zero() else {})
    action = {Gen.X: x_rows, Gen.Y: y_rows, Gen.E: e_rows,
              Gen.K: k_rows, Gen.KINV: kinv_rows}
    return make_module(l, QSAA, spec.labels(), action)


def chain_submodules(l: int, p: int) -> list[Subspace]:
    """The proper nonzero invariant subspaces, r = 1 .. p-1, nested downward.

    Member r is spanned by the basis vectors f(m, n) with m >= r*l and
    has dimension (p - r) * l^2.
    """
    spec = QuotientSpec(l, p)
    out = []
    for r in range(1, p):
        vectors = [basis_vector(m * l + n, l)
                   for m in range(r * l, p * l) for n in range(l)]
        out.append(Subspace.from_vectors(vectors, spec.dim, l))
    return out


def verdicts(l: int, p: int, params) -> dict:
    """Simplicity / semisimplicity / indecomposability of the quotient.

    By the submodule-chain description, semisimplicity reduces to every
    chain member admitting an invariant complement.
    """
    module = build_q(l, p, params)
    chain = chain_submodules(l, p)
    simple = bool(is_simple(module))
    semisimple = simple or all(has_invariant_complement(module, w) for w in chain)
    return {
        "simple": simple,
        "semisimple": semisimple,
        "indecomposable": is_indecomposable(module),
    }


def spin_up_census(l: int, p: int, params) -> dict:
    """Spin-up of every basis vector: label -> generated invariant subspace.

    Each result is a chain member or the whole space; f(m, n) generates
    the member with r = floor(m / l).
    """
    module = build_q(l, p, params)
    out = {}
    for i, label in enumerate(module.labels):
        out[label] = spin_up(module, basis_vector(i, l))
    return out
