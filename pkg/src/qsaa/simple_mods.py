"""The three families of maximal-dimension simple modules.

Each family lives on a basis e(a1, a2), 0 <= a1 < l1 = ord(q^2),
0 <= a2 < l, linearized as index a1*l + a2, and has dimension l1*l equal
to the PI degree of the algebra.  The families are separated by their
annihilation patterns: the first has no E-kernel, the second kills
e(0, .) under E, the third additionally kills e(l1-1, .) under Y.

Besides the constructors this module houses the parameter-level
isomorphism deciders (finite shift search), the explicit intertwiners
witnessing them, and ``classify``, which reads eigendata off an abstract
simple module and produces an isomorphism onto a constructed model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclo import CycloNum, ord_q2, q_int, q_power
from .errors import (
    InvalidParameterError,
    InvariantViolationError,
    NeedsHintsError,
    TorsionError,
)
from .linalg import (
    Mat,
    Vec,
    mat_is_scalar,
    mat_mul,
    mat_pow,
    nullspace,
    transpose,
    vec_mat,
)
from .pbw import QSAA, AlgebraElement, Gen, PBWMonomial
from .rep import (
    MatrixModule,
    act,
    central_scalar,
    hom_space,
    is_intertwiner,
    is_invertible,
    make_module,
    phi_matrix,
)


def _coerce(l: int, value) -> CycloNum:
    if isinstance(value, CycloNum):
        if value.l != l:
            raise InvalidParameterError(f"parameter over wrong order {value.l}")
        return value
    return CycloNum.from_rational(l, Fraction(value))


def _nonzero(l: int, values, count: int, what: str) -> tuple[CycloNum, ...]:
    out = tuple(_coerce(l, v) for v in values)
    if len(out) != count:
        raise InvalidParameterError(f"{what} needs {count} parameters, got {len(out)}")
    for v in out:
        if v.is_zero():
            raise InvalidParameterError(f"{what} parameters must be nonzero")
    return out


@dataclass(frozen=True)
class ParamsM1:
    mu1: CycloNum
    mu2: CycloNum
    mu3: CycloNum
    mu4: CycloNum

    @staticmethod
    def of(l: int, values) -> "ParamsM1":
        return ParamsM1(*_nonzero(l, values, 4, "m1"))

    def astuple(self):
        return (self.mu1, self.mu2, self.mu3, self.mu4)


@dataclass(frozen=True)
class ParamsM2:
    mu1: CycloNum
    mu2: CycloNum
    mu3: CycloNum

    @staticmethod
    def of(l: int, values) -> "ParamsM2":
        return ParamsM2(*_nonzero(l, values, 3, "m2"))

    def astuple(self):
        return (self.mu1, self.mu2, self.mu3)


@dataclass(frozen=True)
class ParamsM3:
    mu1: CycloNum
    mu2: CycloNum

    @staticmethod
    def of(l: int, values) -> "ParamsM3":
        return ParamsM3(*_nonzero(l, values, 2, "m3"))

    def astuple(self):
        return (self.mu1, self.mu2)


@dataclass(frozen=True)
class EigenData:
    """Scalars read off a module from central/normal operators."""

    alpha: CycloNum
    beta: CycloNum
    xi: CycloNum
    lam1: CycloNum
    lam2: CycloNum
    alpha_p: CycloNum | None = None  # even l only
    beta_p: CycloNum | None = None   # even l only
    lam3: CycloNum | None = None     # phi/psi subalgebra context


@dataclass(frozen=True)
class IsoWitness:
    """Shift exponents relating two parameter tuples (r2 unused for m3)."""

    r1: int
    r2: int | None
    scale: CycloNum


def _labels(l: int) -> list[tuple[int, int]]:
    l1 = ord_q2(l)
    return [(a1, a2) for a1 in range(l1) for a2 in range(l)]


def _idx(l: int, a1: int, a2: int) -> int:
    return a1 * l + a2


def build_m1(l: int, mu) -> MatrixModule:
    """First-family module: X diagonal, E cycles a1 with no kernel."""
    p = mu if isinstance(mu, ParamsM1) else ParamsM1.of(l, mu)
    l1 = ord_q2(l)
    even = l % 2 == 0
    q = lambda k: q_power(l, k)
    denom = (1 - q(2)).inv()
    mu3_inv = p.mu3.inv()
    x_rows: Mat = []
    k_rows: Mat = []
    kinv_rows: Mat = []
    e_rows: Mat = []
    y_rows: Mat = []
    for a1, a2 in _labels(l):
        x_rows.append({_idx(l, a1, a2): p.mu1 * q(a1 + a2)})
        k_rows.append({_idx(l, a1, (a2 + 1) % l): p.mu4})
        kinv_rows.append({_idx(l, a1, (a2 - 1) % l): p.mu4.inv()})
        if not even or a1 != l1 - 1:
            e_rows.append({_idx(l, (a1 + 1) % l1, a2): p.mu3 * q(2 * a2)})
        else:
            e_rows.append({_idx(l, 0, (l // 2 + a2) % l): p.mu3 * q(2 * a2)})
        if not even or a1 != 0:
            c = mu3_inv * q(-(a1 + a2)) * ((q(1) * p.mu2 - q(2 * a1 + 1) * p.mu1) * denom)
            y_rows.append({_idx(l, (a1 - 1) % l1, a2): c} if not c.is_zero() else {})
        else:
            c = mu3_inv * q(-a2) * (q(1) * (p.mu2 - p.mu1) * denom)
            y_rows.append({_idx(l, l1 - 1, (l // 2 + a2) % l): c} if not c.is_zero() else {})
    action = {Gen.X: x_rows, Gen.Y: y_rows, Gen.E: e_rows,
              Gen.K: k_rows, Gen.KINV: kinv_rows}
    return make_module(l, QSAA, _labels(l), action)


def build_m2(l: int, mu) -> MatrixModule:
    """Second-family module: E kills e(0, .), Y cycles with no kernel."""
    p = mu if isinstance(mu, ParamsM2) else ParamsM2.of(l, mu)
    l1 = ord_q2(l)
    even = l % 2 == 0
    q = lambda k: q_power(l, k)
    mu2_inv = p.mu2.inv()
    x_rows: Mat = []
    k_rows: Mat = []
    kinv_rows: Mat = []
    e_rows: Mat = []
    y_rows: Mat = []
    for a1, a2 in _labels(l):
        x_rows.append({_idx(l, a1, a2): p.mu1 * q(-a1 + a2)})
        k_rows.append({_idx(l, a1, (a2 + 1) % l): p.mu3})
        kinv_rows.append({_idx(l, a1, (a2 - 1) % l): p.mu3.inv()})
        if a1 == 0:
            e_rows.append({})
        else:
            c = -(mu2_inv * p.mu1) * q(a1 + 2 * a2) * q_int(l, a1)
            e_rows.append({_idx(l, (a1 - 1) % l1, a2): c} if not c.is_zero() else {})
        if not even or a1 != l1 - 1:
            y_rows.append({_idx(l, (a1 + 1) % l1, a2): p.mu2 * q(-a2)})
        else:
            y_rows.append({_idx(l, 0, (l // 2 + a2) % l): p.mu2 * q(-a2)})
    action = {Gen.X: x_rows, Gen.Y: y_rows, Gen.E: e_rows,
              Gen.K: k_rows, Gen.KINV: kinv_rows}
    return make_module(l, QSAA, _labels(l), action)


def build_m3(l: int, mu) -> MatrixModule:
    """Third family: E kills e(0, .), Y kills e(l1-1, .)."""
    p = mu if isinstance(mu, ParamsM3) else ParamsM3.of(l, mu)
    l1 = ord_q2(l)
    q = lambda k: q_power(l, k)
    x_rows: Mat = []
    k_rows: Mat = []
    kinv_rows: Mat = []
    e_rows: Mat = []
    y_rows: Mat = []
    for a1, a2 in _labels(l):
        x_rows.append({_idx(l, a1, a2): p.mu1 * q(-a1 + a2)})
        k_rows.append({_idx(l, a1, (a2 + 1) % l): p.mu2})
        kinv_rows.append({_idx(l, a1, (a2 - 1) % l): p.mu2.inv()})
        if a1 == 0:
            e_rows.append({})
        else:
            c = -q(a1 + 2 * a2) * p.mu1 * q_int(l, a1)
            e_rows.append({_idx(l, a1 - 1, a2): c} if not c.is_zero() else {})
        if a1 == l1 - 1:
            y_rows.append({})
        else:
            y_rows.append({_idx(l, a1 + 1, a2): q(-a2)})
    action = {Gen.X: x_rows, Gen.Y: y_rows, Gen.E: e_rows,
              Gen.K: k_rows, Gen.KINV: kinv_rows}
    return make_module(l, QSAA, _labels(l), action)


# -- isomorphism criteria ------------------------------------------------

def _q_shift(l: int, ratio: CycloNum) -> int | None:
    """The exponent t with ratio = q^t, if one exists."""
    for t in range(l):
        if ratio == q_power(l, t):
            return t
    return None


def iso_m1(l: int, mu, gamma) -> IsoWitness | None:
    """Shift witness for the first family, or None.

    The defining relations are mu1 = gamma1 q^(r1+r2),
    mu2 = gamma2 q^(-r1+r2), mu3^l = gamma3^l, mu4^l = gamma4^l.  For
    even l the displayed intertwiner additionally forces
    (mu3^-1 gamma3)^(l/2) = (mu4^-1 gamma4)^(l/2), which is necessary
    (central characters through half powers) and is included here so the
    decider agrees with the Hom-space oracle.
    """
    p = mu if isinstance(mu, ParamsM1) else ParamsM1.of(l, mu)
    g = gamma if isinstance(gamma, ParamsM1) else ParamsM1.of(l, gamma)
    l1 = ord_q2(l)
    if p.mu3 ** l != g.mu3 ** l or p.mu4 ** l != g.mu4 ** l:
        return None
    if l % 2 == 0:
        half = l // 2
        if (p.mu3.inv() * g.mu3) ** half != (p.mu4.inv() * g.mu4) ** half:
            return None
    for r1 in range(l1):
        for r2 in range(l):
            if (p.mu1 == g.mu1 * q_power(l, r1 + r2)
                    and p.mu2 == g.mu2 * q_power(l, -r1 + r2)):
                return IsoWitness(r1, r2, CycloNum.one(l))
    return None


def iso_m2(l: int, mu, gamma) -> IsoWitness | None:
    """Shift witness for the second family, or None.

    Relations: mu1 = gamma1 q^(-r1+r2), mu2^l = gamma2^l, mu3^l =
    gamma3^l; for even l additionally
    (mu2^-1 gamma2)^(l/2) q^((r1+r2) l/2) = (mu3^-1 gamma3)^(l/2),
    matching the Hom-space oracle.
    """
    p = mu if isinstance(mu, ParamsM2) else ParamsM2.of(l, mu)
    g = gamma if isinstance(gamma, ParamsM2) else ParamsM2.of(l, gamma)
    l1 = ord_q2(l)
    if p.mu2 ** l != g.mu2 ** l or p.mu3 ** l != g.mu3 ** l:
        return None
    half = l // 2
    for r1 in range(l1):
        for r2 in range(l):
            if p.mu1 != g.mu1 * q_power(l, -r1 + r2):
                continue
            if l % 2 == 0:
                lhs = (p.mu2.inv() * g.mu2) ** half * q_power(l, (r1 + r2) * half)
                if lhs != (p.mu3.inv() * g.mu3) ** half:
                    continue
            return IsoWitness(r1, r2, CycloNum.one(l))
    return None


def iso_m3(l: int, mu, gamma) -> IsoWitness | None:
    """Shift witness for the third family: mu1 = gamma1 q^r, mu2^l = gamma2^l."""
    p = mu if isinstance(mu, ParamsM3) else ParamsM3.of(l, mu)
    g = gamma if isinstance(gamma, ParamsM3) else ParamsM3.of(l, gamma)
    if p.mu2 ** l != g.mu2 ** l:
        return None
    r = _q_shift(l, p.mu1 / g.mu1)
    if r is None:
        return None
    return IsoWitness(r, None, CycloNum.one(l))


# -- explicit intertwiners -------------------------------------------------

def explicit_iso_m1(l: int, mu, gamma, witness: IsoWitness) -> Mat:
    """Matrix of the shift intertwiner M1(mu) -> M1(gamma)."""
    p = mu if isinstance(mu, ParamsM1) else ParamsM1.of(l, mu)
    g = gamma if isinstance(gamma, ParamsM1) else ParamsM1.of(l, gamma)
    r1, r2 = witness.r1, witness.r2
    l1 = ord_q2(l)
    if (p.mu1 != g.mu1 * q_power(l, r1 + r2)
            or p.mu2 != g.mu2 * q_power(l, -r1 + r2)
            or p.mu3 ** l != g.mu3 ** l or p.mu4 ** l != g.mu4 ** l):
        raise InvalidParameterError("witness does not satisfy the shift relations")
    c = p.mu3.inv() * g.mu3 * q_power(l, 2 * r2)
    d = p.mu4.inv() * g.mu4
    rows: Mat = []
    for a1, a2 in _labels(l):
        coeff = c ** a1 * d ** a2
        if l % 2 or a1 <= l1 - r1 - 1:
            target = _idx(l, (a1 + r1) % l1, (a2 + r2) % l)
        else:
            target = _idx(l, (a1 + r1) % l1, (l // 2 + a2 + r2) % l)
        rows.append({target: coeff})
    return rows


def explicit_iso_m2(l: int, mu, gamma, witness: IsoWitness) -> Mat:
    """Matrix of the shift intertwiner M2(mu) -> M2(gamma)."""
    p = mu if isinstance(mu, ParamsM2) else ParamsM2.of(l, mu)
    g = gamma if isinstance(gamma, ParamsM2) else ParamsM2.of(l, gamma)
    r1, r2 = witness.r1, witness.r2
    l1 = ord_q2(l)
    if (p.mu1 != g.mu1 * q_power(l, -r1 + r2)
            or p.mu2 ** l != g.mu2 ** l or p.mu3 ** l != g.mu3 ** l):
        raise InvalidParameterError("witness does not satisfy the shift relations")
    c = p.mu2.inv() * g.mu2 * q_power(l, -r2)
    d = p.mu3.inv() * g.mu3
    rows: Mat = []
    half = l // 2
    for a1, a2 in _labels(l):
        coeff = c ** a1 * d ** a2
        if l % 2 or a1 <= l1 - r1 - 1:
            target = _idx(l, (a1 + r1) % l1, (a2 + r2) % l)
        else:
            coeff = coeff * q_power(l, -half * (a1 + r1 - half))
            target = _idx(l, (a1 + r1) % l1, (half + a2 + r2) % l)
        rows.append({target: coeff})
    return rows


def explicit_iso_m3(l: int, mu, gamma, witness: IsoWitness) -> Mat:
    """Matrix of the shift intertwiner M3(mu) -> M3(gamma)."""
    p = mu if isinstance(mu, ParamsM3) else ParamsM3.of(l, mu)
    g = gamma if isinstance(gamma, ParamsM3) else ParamsM3.of(l, gamma)
    r = witness.r1
    if p.mu1 != g.mu1 * q_power(l, r) or p.mu2 ** l != g.mu2 ** l:
        raise InvalidParameterError("witness does not satisfy the shift relations")
    d = p.mu2.inv() * g.mu2
    rows: Mat = []
    for a1, a2 in _labels(l):
        coeff = q_power(l, -r * a1) * d ** a2
        rows.append({_idx(l, a1, (a2 + r) % l): coeff})
    return rows


# -- classification ---------------------------------------------------------

def _integer_nth_root(value: int, n: int) -> int | None:
    if value == 0:
        return 0
    neg = value < 0
    if neg and n % 2 == 0:
        return None
    v = abs(value)
    root = round(v ** (1.0 / n))
    for cand in (root - 1, root, root + 1):
        if cand >= 0 and cand ** n == v:
            return -cand if neg else cand
    return None


def lth_root(x: CycloNum, l: int, hints=()) -> CycloNum | None:
    """Some c in Q(zeta_l) with c^l = x, from hints or rational extraction."""
    for h in hints:
        h = _coerce(l, h)
        if h ** l == x:
            return h
    if x.is_rational():
        r = x.rational_value()
        num = _integer_nth_root(r.numerator, l)
        den = _integer_nth_root(r.denominator, l)
        if num is not None and den is not None:
            return CycloNum.from_rational(l, Fraction(num, den))
    return None


def _eigenvalue_candidates(mat: Mat, module: MatrixModule, power_scalar: CycloNum,
                           hints) -> list[CycloNum]:
    l = module.l
    seen: list[CycloNum] = []

    def push(c: CycloNum):
        if not c.is_zero() and c not in seen:
            seen.append(c)

    for h in hints:
        push(_coerce(l, h))
    for i, row in enumerate(mat):
        x = row.get(i)
        if x is not None and len(row) == 1:
            push(x)
    root = lth_root(power_scalar, l)
    if root is not None:
        for j in range(l):
            push(root * q_power(l, j))
    return seen


def _eigenspace(mat: Mat, value: CycloNum, n: int, l: int,
                within: list[Vec] | None = None) -> list[Vec]:
    """Basis of {v : v (mat - value) = 0}, optionally inside a subspace span."""
    shifted = [dict(row) for row in mat]
    for i in range(n):
        x = shifted[i].get(i, CycloNum.zero(l)) - value
        if x.is_zero():
            shifted[i].pop(i, None)
        else:
            shifted[i][i] = x
    if within is None:
        return nullspace(transpose(shifted, n), n, l)
    # solve sum c_k (w_k shifted) = 0 in the coordinates of the given span
    images = [vec_mat(w, shifted) for w in within]
    rows = transpose(images, n)
    coords = nullspace(rows, len(within), l)
    out = []
    for c in coords:
        v: Vec = {}
        for k, x in c.items():
            for j, y in within[k].items():
                s = v.get(j)
                s = x * y if s is None else s + x * y
                if s.is_zero():
                    v.pop(j, None)
                else:
                    v[j] = s
        if v:
            out.append(v)
    return out


@dataclass
class ClassifyResult:
    kind: str                 # "m1" | "m2" | "m3"
    params: ParamsM1 | ParamsM2 | ParamsM3
    intertwiner: Mat          # rows: built-model basis -> module coordinates
    eigen: EigenData
    notes: tuple[str, ...] = ()


def _ray_eigenvalue(v: Vec, image: Vec, l: int) -> CycloNum | None:
    """The scalar c with image = c*v, if the two rays agree."""
    if not image:
        return CycloNum.zero(l)
    j = min(v)
    if j not in image:
        return None
    c = image[j] / v[j]
    for k in set(v) | set(image):
        lhs = image.get(k, CycloNum.zero(l))
        rhs = v.get(k, CycloNum.zero(l)) * c
        if lhs != rhs:
            return None
    return c


def classify(module: MatrixModule, eigen_hints=()) -> ClassifyResult:
    """Match a simple torsion-free module to a constructed model.

    Reads the central scalars, finds a joint eigenvector of X and phi
    (and of the half-power operators for even l), applies the case split
    on (alpha, beta), and returns parameters plus an explicit
    intertwiner.  The intertwiner from the classification recipe is
    verified against the Hom-space oracle; if the recipe map fails, the
    oracle's intertwiner is substituted and the result carries a note.
    """
    if module.pres is not QSAA:
        raise InvalidParameterError("classification applies to qsaa modules")
    l, n = module.l, module.dim
    even = l % 2 == 0
    half = l // 2

    def mono(a=0, b=0, c=0, d=0):
        return AlgebraElement.monomial(QSAA, l, PBWMonomial(a, b, c, d, 0))

    alpha = central_scalar(module, mono(c=l))
    beta = central_scalar(module, mono(b=l))
    xi = central_scalar(module, mono(d=l))
    x_mat = module.action[Gen.X]
    phi_mat = phi_matrix(module)
    if not is_invertible(x_mat, n, l):
        raise TorsionError("X acts non-invertibly; out of the torsion-free case")
    if not is_invertible(phi_mat, n, l):
        raise TorsionError("phi acts non-invertibly; out of the torsion-free case")

    xl = central_scalar(module, mono(a=l))
    # phi is normal with q-power commutation scalars, so phi^l is central
    phil_scalar = mat_is_scalar(mat_pow(phi_mat, l, l), n, l) or CycloNum.zero(l)

    v = lam1 = lam2 = None
    for t in _eigenvalue_candidates(x_mat, module, xl, eigen_hints):
        space = _eigenspace(x_mat, t, n, l)
        if not space:
            continue
        phi_cands = _eigenvalue_candidates(phi_mat, module, phil_scalar, eigen_hints)
        for s in phi_cands:
            joint = _eigenspace(phi_mat, s, n, l, within=space)
            if joint:
                v, lam1, lam2 = joint[0], t, s
                break
        if v is not None:
            break
    if v is None:
        raise NeedsHintsError(
            "no joint eigenvector of X and phi found over Q(zeta); pass hints")

    alpha_p = beta_p = None
    notes: list[str] = []
    if even:
        ek = mat_mul(module.gen_power(Gen.E, half), module.gen_power(Gen.K, half))
        yk = mat_mul(module.gen_power(Gen.Y, half), module.gen_power(Gen.K, half))
        alpha_p = _ray_eigenvalue(v, vec_mat(v, ek), l)
        beta_p = _ray_eigenvalue(v, vec_mat(v, yk), l)
        if alpha_p is None or beta_p is None:
            raise NeedsHintsError(
                "joint eigenvector is not an eigenvector of the half-power operators")
    eigen = EigenData(alpha, beta, xi, lam1, lam2, alpha_p, beta_p)

    mu4 = lth_root(xi, l, eigen_hints)
    if mu4 is None:
        raise NeedsHintsError("no l-th root of the K^l scalar available; pass hints")

    e_mat = module.action[Gen.E]
    k_mat = module.action[Gen.K]
    y_mat = module.action[Gen.Y]

    def images_along(start: Vec, step_mat: Mat) -> Mat:
        # rows of the intertwiner: start vector pushed along E/Y and K powers
        rows: Mat = []
        l1 = ord_q2(l)
        first = start
        for a1 in range(l1):
            current = first
            for a2 in range(l):
                rows.append(dict(current))
                current = vec_mat(current, k_mat)
            first = vec_mat(first, step_mat)
        return rows

    def scaled(rows: Mat, scale_of) -> Mat:
        out: Mat = []
        i = 0
        l1 = ord_q2(l)
        for a1 in range(l1):
            for a2 in range(l):
                out.append({j: x * scale_of(a1, a2) for j, x in rows[i].items()})
                i += 1
        return out

    # The extracted roots are determined only up to an l-th root of unity,
    # i.e. up to a power of q; at even l the q-twisted models need not be
    # isomorphic, so the recipe map selects the compatible twist.
    def twists(root: CycloNum):
        return [root * q_power(l, j) for j in range(l)]

    candidates: list[tuple] = []  # (params, built, intertwiner)
    fallbacks: list[tuple] = []   # (params, built, intertwiner, note)
    if not alpha.is_zero():
        kind = "m1"
        mu3 = lth_root(alpha, l, eigen_hints)
        if mu3 is None:
            raise NeedsHintsError("no l-th root of the E^l scalar available; pass hints")
        raw = images_along(v, e_mat)
        for m3 in twists(mu3):
            for m4 in twists(mu4):
                params = ParamsM1(lam1, lam2, m3, m4)
                m3i, m4i = m3.inv(), m4.inv()
                inter = scaled(raw, lambda a1, a2: m3i ** a1 * m4i ** a2)
                candidates.append((params, build_m1(l, params), inter))
    else:
        # walk E down to a vector it annihilates
        r = 0
        vv = v
        while True:
            nxt = vec_mat(vv, e_mat)
            if not nxt:
                break
            vv = nxt
            r += 1
            if r > l:
                raise InvariantViolationError("E-orbit failed to terminate")
        raw = images_along(vv, y_mat)
        if not beta.is_zero():
            kind = "m2"
            mu2 = lth_root(beta, l, eigen_hints)
            if mu2 is None:
                raise NeedsHintsError("no l-th root of the Y^l scalar available; pass hints")
            factor = q_power(l, -half * (r + 1)) if even else None
            for m2 in twists(mu2):
                for m4 in twists(mu4):
                    params = ParamsM2(q_power(l, r) * lam1, m2, m4)
                    built = build_m2(l, params)
                    m2i, m4i = m2.inv(), m4.inv()
                    if even:
                        # recipe: the a1 = 0 column carries its own q-power
                        inter = scaled(raw, lambda a1, a2:
                                       (m2i ** a1 if a1 else factor) * m4i ** a2)
                        candidates.append((params, built, inter))
                        fallbacks.append((params, built,
                                          scaled(raw, lambda a1, a2: m2i ** a1 * m4i ** a2),
                                          "even-case recipe branch factor fails; "
                                          "uniform-coefficient map verified"))
                    else:
                        candidates.append((params, built,
                                           scaled(raw, lambda a1, a2: m2i ** a1 * m4i ** a2)))
        else:
            kind = "m3"
            for m4 in twists(mu4):
                params = ParamsM3(lam1 * q_power(l, r), m4)
                m4i = m4.inv()
                inter = scaled(raw, lambda a1, a2: m4i ** a2)
                candidates.append((params, build_m3(l, params), inter))

    for params, built, inter in candidates:
        if is_intertwiner(built, module, inter) and is_invertible(inter, n, l):
            return ClassifyResult(kind, params, inter, eigen, tuple(notes))
    for params, built, inter, note in fallbacks:
        if is_intertwiner(built, module, inter) and is_invertible(inter, n, l):
            return ClassifyResult(kind, params, inter, eigen, tuple(notes) + (note,))
    # no recipe variant verified: fall back to the Hom-space oracle
    for params, built, _ in candidates:
        for cand in hom_space(built, module):
            if is_invertible(cand, n, l):
                notes.append("recipe intertwiner failed verification; "
                             "oracle map substituted")
                return ClassifyResult(kind, params, cand, eigen, tuple(notes))
    raise InvariantViolationError(
        "classification produced parameters with empty Hom space")
