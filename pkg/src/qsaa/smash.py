"""The extension by F: modules over the phi/psi subalgebra and their lifts.

An X,Y-torsion-free module over the subalgebra B on K^(+-1), X, Y, phi,
psi extends uniquely to the full smash-product algebra: phi and psi's
defining expressions are solved for E and F, which is exactly what
``lift_to_A`` does at the matrix level.  The concrete family built here
is the l^2-dimensional module attached to a common eigenvector of
(K, YX, psi*phi) whose phi^l scalar alpha is nonzero (odd l).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclo import CycloNum, q_power
from .errors import (
    InvalidOrderError,
    InvalidParameterError,
    InvariantViolationError,
    NeedsHintsError,
    TorsionError,
)
from .linalg import (
    Mat,
    mat_add,
    mat_inv,
    mat_is_scalar,
    mat_mul,
    mat_pow,
    mat_scale,
    mat_sub,
    vec_mat,
)
from .pbw import PHIPSI, SMASH, AlgebraElement, Gen, PBWMonomial
from .rep import MatrixModule, act, is_invertible, make_module
from .simple_mods import EigenData, _eigenspace, _eigenvalue_candidates, _ray_eigenvalue


@dataclass(frozen=True)
class BModuleParams:
    """Eigendata seeding the construction: vK = lam1 v, vYX = lam2 v,
    v psi phi = lam3 v, vX^l = xi v, v phi^l = alpha v."""

    lam1: CycloNum
    lam2: CycloNum
    lam3: CycloNum
    xi: CycloNum
    alpha: CycloNum

    @staticmethod
    def of(l: int, values) -> "BModuleParams":
        out = [v if isinstance(v, CycloNum) else CycloNum.from_rational(l, Fraction(v))
               for v in values]
        if len(out) != 5:
            raise InvalidParameterError(
                "need (lambda1, lambda2, lambda3, xi, alpha)")
        p = BModuleParams(*out)
        for name in ("lam1", "lam2", "xi", "alpha"):
            if getattr(p, name).is_zero():
                raise InvalidParameterError(f"{name} must be nonzero")
        return p


def build_n1(l: int, params) -> MatrixModule:
    """The l^2-dimensional module over the phi/psi subalgebra (odd l).

    Basis e(a, b) = v phi^a X^b with 0 <= a, b < l; phi and X cycle with
    wraps alpha and xi, K is diagonal, and lambda3 = 0 is permitted (the
    constructor relies on the full relation check, not parameter ranges).
    """
    if l < 3 or l % 2 == 0:
        raise InvalidOrderError("this construction needs odd l >= 3")
    p = params if isinstance(params, BModuleParams) else BModuleParams.of(l, params)
    q = lambda k: q_power(l, k)
    one = CycloNum.one(l)
    labels = [(a, b) for a in range(l) for b in range(l)]

    def idx(a, b):
        return a * l + b

    k_rows: Mat = []
    kinv_rows: Mat = []
    phi_rows: Mat = []
    psi_rows: Mat = []
    x_rows: Mat = []
    y_rows: Mat = []
    alpha_inv = p.alpha.inv()
    xi_inv = p.xi.inv()
    for a, b in labels:
        kval = q(-b - a) * p.lam1
        k_rows.append({idx(a, b): kval})
        kinv_rows.append({idx(a, b): kval.inv()})
        if a + 1 < l:
            phi_rows.append({idx(a + 1, b): one})
        else:
            phi_rows.append({idx(0, b): p.alpha})
        if a:
            c = p.lam3 - q(3) * (q(-2 * a) - 1) * p.lam1 * p.lam2
            psi_rows.append({idx(a - 1, b): c} if not c.is_zero() else {})
        else:
            c = alpha_inv * p.lam3
            psi_rows.append({idx(l - 1, b): c} if not c.is_zero() else {})
        if b + 1 < l:
            x_rows.append({idx(a, b + 1): one})
        else:
            x_rows.append({idx(a, 0): p.xi})
        if b:
            y_rows.append({idx(a, b - 1): q(b - a) * p.lam2})
        else:
            y_rows.append({idx(a, l - 1): xi_inv * q(-a) * p.lam2})
    action = {Gen.X: x_rows, Gen.Y: y_rows, Gen.K: k_rows,
              Gen.KINV: kinv_rows, Gen.PHI: phi_rows, Gen.PSI: psi_rows}
    return make_module(l, PHIPSI, labels, action)


def lift_to_A(module: MatrixModule) -> MatrixModule:
    """Extend a torsion-free phi/psi module to the full smash product.

    E := (q - q^-1)^-1 Y^-1 (X - Phi) and
    F := (1 - q^2)^-1 X^-1 (Psi + q^2 Y K^-1); every relation of the big
    algebra is then verified exactly, and expanding phi and psi back
    recovers the original matrices by construction.
    """
    if module.pres is not PHIPSI:
        raise InvalidParameterError("lift expects a phi/psi module")
    l, n = module.l, module.dim
    x_mat = module.action[Gen.X]
    y_mat = module.action[Gen.Y]
    if not is_invertible(x_mat, n, l):
        raise TorsionError("X is singular; the module is not X-torsion free")
    if not is_invertible(y_mat, n, l):
        raise TorsionError("Y is singular; the module is not Y-torsion free")
    q = lambda k: q_power(l, k)
    phi_m = module.action[Gen.PHI]
    psi_m = module.action[Gen.PSI]
    kinv = module.action[Gen.KINV]
    e_mat = mat_scale(
        mat_mul(mat_inv(y_mat, n, l), mat_sub(x_mat, phi_m)),
        (q(1) - q(-1)).inv())
    f_mat = mat_scale(
        mat_mul(mat_inv(x_mat, n, l),
                mat_add(psi_m, mat_mul(y_mat, kinv), q(2))),
        (1 - q(2)).inv())
    action = {Gen.X: x_mat, Gen.Y: y_mat, Gen.K: module.action[Gen.K],
              Gen.KINV: kinv, Gen.E: e_mat, Gen.F: f_mat}
    return make_module(l, SMASH, module.labels, action)


def eigendata_of(module: MatrixModule, hints=()) -> EigenData:
    """Read the defining scalars off a phi/psi module.

    alpha, beta, xi are the scalars of the central elements phi^l,
    psi^l, X^l; lambda1, lambda2, lambda3 are the eigenvalues of
    K, YX, psi*phi on a joint eigenvector.
    """
    if module.pres is not PHIPSI:
        raise InvalidParameterError("eigendata applies to phi/psi modules")
    l, n = module.l, module.dim

    def central(mono):
        mat = act(module, AlgebraElement.monomial(PHIPSI, l, mono))
        c = mat_is_scalar(mat, n, l)
        if c is None:
            raise InvariantViolationError(
                "a central power does not act as a scalar; module is not simple")
        return c

    alpha = central(PBWMonomial(0, 0, l, 0, 0))
    beta = central(PBWMonomial(0, 0, 0, 0, l))
    xi = central(PBWMonomial(l, 0, 0, 0, 0))

    k_mat = module.action[Gen.K]
    yx = mat_mul(module.action[Gen.Y], module.action[Gen.X])
    psiphi = mat_mul(module.action[Gen.PSI], module.action[Gen.PHI])
    kl = central(PBWMonomial(0, 0, 0, l, 0))
    yxl = mat_is_scalar(mat_pow(yx, l, l), n, l) or CycloNum.zero(l)
    for lam1 in _eigenvalue_candidates(k_mat, module, kl, hints):
        space = _eigenspace(k_mat, lam1, n, l)
        if not space:
            continue
        for lam2 in _eigenvalue_candidates(yx, module, yxl, hints):
            sub = _eigenspace(yx, lam2, n, l, within=space)
            for v in sub:
                lam3 = _ray_eigenvalue(v, vec_mat(v, psiphi), l)
                if lam3 is not None:
                    return EigenData(alpha, beta, xi, lam1, lam2, lam3=lam3)
    raise NeedsHintsError(
        "no joint eigenvector of K, YX, psi*phi found over Q(zeta); pass hints")
