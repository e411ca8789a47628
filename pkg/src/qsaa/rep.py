"""Finite-dimensional right modules given by exact generator matrices.

A module is one n x n matrix over Q(zeta_l) per generator, acting on row
vectors from the right; a word g1 g2 ... gk therefore acts as the matrix
product G_{g1} G_{g2} ... G_{gk} (this orientation is fixed once here
and used everywhere).  All checks are exact:

* ``verify_relations``     -- every defining relation as a matrix identity;
* ``algebra_closure_dim``  -- span of the image algebra, n^2 certifying
  simplicity with scalar endomorphisms;
* ``is_simple``            -- three-valued verdict (a closure below n^2 does
  not prove reducibility over a non-split field);
* ``hom_space``            -- intertwiner space by sparse linear algebra;
* ``endo_algebra``         -- endomorphism algebra with its radical from the
  trace bilinear form (characteristic zero), giving indecomposability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cyclo import CycloNum, q_power
from .errors import (
    InvalidParameterError,
    InvariantViolationError,
    OrderMismatchError,
    PresentationMismatchError,
    ResourceLimitError,
)
from .linalg import (
    Echelon,
    Mat,
    Vec,
    flatten_mat,
    identity,
    mat_eq,
    mat_from_dense,
    mat_inv,
    mat_is_scalar,
    mat_mul,
    mat_sub,
    mat_trace,
    nullspace,
    nullspace_with_frees,
    solve_affine,
    transpose,
    unflatten,
    vec_add_scaled,
    vec_mat,
)
from .pbw import (
    PHIPSI,
    PRESENTATIONS,
    QSAA,
    SMASH,
    AlgebraElement,
    Gen,
    Presentation,
    phi_element,
    psi_element,
)

#: Modules larger than this need force=True for closure computations.
CLOSURE_DIM_GUARD = 64


@dataclass
class MatrixModule:
    """A right module: dimension, basis labels, one matrix per generator."""

    l: int
    pres: Presentation
    dim: int
    labels: tuple
    action: dict  # Gen -> sparse Mat
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def matrix(self, g: Gen) -> Mat:
        return self.action[g]

    def gen_power(self, g: Gen, k: int) -> Mat:
        powers = self._cache.setdefault(("pow", g), [identity(self.dim, self.l)])
        while len(powers) <= k:
            powers.append(mat_mul(powers[-1], self.action[g]))
        return powers[k]


def make_module(l: int, pres: Presentation, labels: Sequence, action: dict,
                check: bool = True) -> MatrixModule:
    """Assemble a module; K^-1 defaults to the inverse of the K matrix.

    With ``check`` (the default) every defining relation is enforced at
    construction; loaders that want to inspect broken data pass False.
    """
    action = dict(action)
    dim = len(labels)
    if Gen.KINV not in action and Gen.K in action:
        action[Gen.KINV] = mat_inv(action[Gen.K], dim, l)
    missing = [g.value for g in pres.generators if g not in action]
    if missing:
        raise InvalidParameterError(f"missing generator matrices: {missing}")
    module = MatrixModule(l, pres, dim, tuple(labels), action)
    if check:
        bad = verify_relations(module)
        if bad:
            raise InvariantViolationError(
                f"defining relations fail: {[v['relation'] for v in bad]}")
    return module


# -- relations ---------------------------------------------------------

def _relation_table(pres: Presentation, l: int):
    """Defining relations as pairs of word combinations [(coeff, word)]."""
    q = lambda k: q_power(l, k)
    one = CycloNum.one(l)
    X, Y, E, K, Ki, F, PHI, PSI = (Gen.X, Gen.Y, Gen.E, Gen.K, Gen.KINV,
                                   Gen.F, Gen.PHI, Gen.PSI)
    common = [
        ("XY = q YX", [(one, (X, Y))], [(q(1), (Y, X))]),
        ("XK = q^-1 KX", [(one, (X, K))], [(q(-1), (K, X))]),
        ("YK = q KY", [(one, (Y, K))], [(q(1), (K, Y))]),
        ("K K^-1 = 1", [(one, (K, Ki))], [(one, ())]),
        ("K^-1 K = 1", [(one, (Ki, K))], [(one, ())]),
    ]
    if pres is PHIPSI:
        return common + [
            ("phi X = X phi", [(one, (PHI, X))], [(one, (X, PHI))]),
            ("phi Y = q^-1 Y phi", [(one, (PHI, Y))], [(q(-1), (Y, PHI))]),
            ("phi K = q^-1 K phi", [(one, (PHI, K))], [(q(-1), (K, PHI))]),
            ("psi X = X psi", [(one, (PSI, X))], [(one, (X, PSI))]),
            ("psi Y = q Y psi", [(one, (PSI, Y))], [(q(1), (Y, PSI))]),
            ("psi K = q K psi", [(one, (PSI, K))], [(q(1), (K, PSI))]),
            ("psi phi - phi psi = q(1-q^2) KYX",
             [(one, (PSI, PHI)), (-one, (PHI, PSI))],
             [(q(1) - q(3), (K, Y, X))]),
        ]
    table = common + [
        ("EK = q^-2 KE", [(one, (E, K))], [(q(-2), (K, E))]),
        ("EX = q XE", [(one, (E, X))], [(q(1), (X, E))]),
        ("EY = X + q^-1 YE", [(one, (E, Y))], [(one, (X,)), (q(-1), (Y, E))]),
    ]
    if pres is SMASH:
        c = (q(1) - q(-1)).inv()
        table += [
            ("FK = q^2 KF", [(one, (F, K))], [(q(2), (K, F))]),
            ("EF - FE = (K - K^-1)/(q - q^-1)",
             [(one, (E, F)), (-one, (F, E))],
             [(c, (K,)), (-c, (Ki,))]),
            ("FX = Y K^-1 + XF", [(one, (F, X))],
             [(one, (Y, Ki)), (one, (X, F))]),
            ("FY = YF", [(one, (F, Y))], [(one, (Y, F))]),
        ]
    return table


def act_word(module: MatrixModule, word: Iterable[Gen]) -> Mat:
    out = identity(module.dim, module.l)
    for g in word:
        out = mat_mul(out, module.action[g])
    return out


def _eval_side(module: MatrixModule, terms) -> Mat:
    out = [dict() for _ in range(module.dim)]
    for coeff, word in terms:
        mat = act_word(module, word)
        out = [vec_add_scaled(r, m, coeff) for r, m in zip(out, mat)]
    return out


def verify_relations(module: MatrixModule) -> list[dict]:
    """Report every violated defining relation (empty list = pass)."""
    violations = []
    for name, lhs, rhs in _relation_table(module.pres, module.l):
        left = _eval_side(module, lhs)
        right = _eval_side(module, rhs)
        diff = mat_sub(left, right)
        for i, row in enumerate(diff):
            if row:
                j = min(row)
                violations.append({
                    "relation": name,
                    "basis_index": i,
                    "column": j,
                    "residual": str(row[j]),
                })
                break
    return violations


def act(module: MatrixModule, x: AlgebraElement) -> Mat:
    """Matrix of an algebra element (ring homomorphism on elements)."""
    if x.l != module.l:
        raise OrderMismatchError(f"orders differ: {x.l} vs {module.l}")
    if x.pres.name != module.pres.name:
        if not set(x.pres.generators) <= set(module.action):
            raise PresentationMismatchError(
                f"{x.pres.name} element cannot act on a {module.pres.name} module")
    n = module.dim
    out = [dict() for _ in range(n)]
    third, fifth = x.pres.slots
    for mono, coeff in x.terms.items():
        mat = module.gen_power(Gen.X, mono.a)
        for g, k in ((Gen.Y, mono.b), (third, mono.c)):
            if k:
                mat = mat_mul(mat, module.gen_power(g, k))
        if mono.d:
            g = Gen.K if mono.d > 0 else Gen.KINV
            mat = mat_mul(mat, module.gen_power(g, abs(mono.d)))
        if mono.e:
            mat = mat_mul(mat, module.gen_power(fifth, mono.e))
        out = [vec_add_scaled(r, m, coeff) for r, m in zip(out, mat)]
    return out


def phi_matrix(module: MatrixModule) -> Mat:
    if "phi" not in module._cache:
        if module.pres is PHIPSI:
            module._cache["phi"] = module.action[Gen.PHI]
        else:
            module._cache["phi"] = act(module, phi_element(module.l, QSAA))
    return module._cache["phi"]


def psi_matrix(module: MatrixModule) -> Mat:
    if "psi" not in module._cache:
        if module.pres is PHIPSI:
            module._cache["psi"] = module.action[Gen.PSI]
        else:
            module._cache["psi"] = act(module, psi_element(module.l))
    return module._cache["psi"]


def central_scalar(module: MatrixModule, x: AlgebraElement) -> CycloNum:
    """The scalar by which a central element acts; error if not scalar."""
    c = mat_is_scalar(act(module, x), module.dim, module.l)
    if c is None:
        raise InvariantViolationError(f"element does not act as a scalar: {x}")
    return c


# -- subspaces ---------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace in reduced echelon form (canonical basis)."""

    n: int
    l: int
    rows: tuple  # RREF row dicts ordered by pivot
    pivots: tuple

    @staticmethod
    def from_vectors(vectors: Iterable[Vec], n: int, l: int) -> "Subspace":
        ech = Echelon(n, l)
        for v in vectors:
            ech.add(v)
        order = sorted(range(ech.dim), key=lambda r: ech.pivots[r])
        return Subspace(n, l,
                        tuple(ech.rows[r] for r in order),
                        tuple(sorted(ech.pivots)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, vec: Vec) -> bool:
        out = dict(vec)
        for piv, row in zip(self.pivots, self.rows):
            x = out.get(piv)
            if x is not None:
                out = vec_add_scaled(out, row, -x)
        return not out

    def reduce(self, vec: Vec) -> Vec:
        out = dict(vec)
        for piv, row in zip(self.pivots, self.rows):
            x = out.get(piv)
            if x is not None:
                out = vec_add_scaled(out, row, -x)
        return out

    def is_invariant(self, module: MatrixModule) -> bool:
        return all(self.contains(vec_mat(row, module.action[g]))
                   for row in self.rows for g in module.pres.generators)


def basis_vector(i: int, l: int) -> Vec:
    return {i: CycloNum.one(l)}


def spin_up(module: MatrixModule, v: Vec) -> Subspace:
    """Smallest invariant subspace containing v."""
    if not v:
        raise InvalidParameterError("spin_up needs a nonzero vector")
    gens_mats = [module.action[g] for g in module.pres.generators]
    ech = Echelon(module.dim, module.l)
    frontier = []
    res = ech.add(v)
    if res is not None:
        frontier.append(res)
    while frontier:
        new = []
        for w in frontier:
            for g in gens_mats:
                res = ech.add(vec_mat(w, g))
                if res is not None:
                    new.append(res)
        frontier = new
    return Subspace.from_vectors(ech.rows, module.dim, module.l)


# -- algebra closure and simplicity -------------------------------------

def algebra_closure_dim(module: MatrixModule, force: bool = False) -> int:
    """Dimension over Q(zeta) of the unital algebra the action generates.

    Breadth-first span growth seeded with the identity plus generator
    matrices; equals dim^2 exactly when the module is simple with scalar
    endomorphisms.
    """
    if "closure" in module._cache:
        return module._cache["closure"]
    if module.dim > CLOSURE_DIM_GUARD and not force:
        raise ResourceLimitError(
            f"dimension {module.dim} above closure guard {CLOSURE_DIM_GUARD}")
    n, l = module.dim, module.l
    gens_mats = [module.action[g] for g in module.pres.generators]
    ech = Echelon(n * n, l)
    frontier = []
    for seed in [identity(n, l), *gens_mats]:
        if ech.add(flatten_mat(seed, n)) is not None:
            frontier.append(seed)
    while frontier:
        new = []
        for mat in frontier:
            for g in gens_mats:
                prod = mat_mul(mat, g)
                if ech.add(flatten_mat(prod, n)) is not None:
                    new.append(prod)
        frontier = new
    module._cache["closure"] = ech.dim
    return ech.dim


@dataclass(frozen=True)
class SimplicityVerdict:
    kind: str  # "simple" | "not-simple" | "undetermined-nonsplit"
    witness: Subspace | None = None

    def __bool__(self) -> bool:
        return self.kind == "simple"


def _element_panel(module: MatrixModule) -> list[Mat]:
    """Deterministic probe elements: generators, phi/psi, length-2 products."""
    if "panel" in module._cache:
        return module._cache["panel"]
    gens_mats = [module.action[g] for g in module.pres.generators]
    panel = list(gens_mats)
    if module.pres in (QSAA, SMASH):
        panel.append(phi_matrix(module))
    if module.pres is SMASH:
        panel.append(psi_matrix(module))
    for a in gens_mats:
        for b in gens_mats:
            panel.append(mat_mul(a, b))
    module._cache["panel"] = panel
    return panel


def _left_kernel(mat: Mat, n: int, l: int) -> list[Vec]:
    # vectors v with v.mat = 0; equations indexed by columns
    cols = transpose(mat, n)
    return nullspace(cols, n, l)


def find_proper_invariant_subspace(module: MatrixModule) -> Subspace | None:
    """Spin-up search from basis vectors and panel kernels."""
    n, l = module.dim, module.l
    seeds = [basis_vector(i, l) for i in range(n)]
    for mat in _element_panel(module):
        seeds.extend(_left_kernel(mat, n, l))
    for seed in seeds:
        if not seed:
            continue
        sub = spin_up(module, seed)
        if 0 < sub.dim < n:
            return sub
    return None


def is_simple(module: MatrixModule, force: bool = False) -> SimplicityVerdict:
    """Three-valued simplicity verdict.

    A proper invariant subspace (found by spin-up) proves not-simple;
    closure dimension n^2 proves simple; anything else stays undetermined
    because a small closure alone cannot rule out a division-algebra
    endomorphism ring over this non-closed field.
    """
    witness = find_proper_invariant_subspace(module)
    if witness is not None:
        return SimplicityVerdict("not-simple", witness)
    if algebra_closure_dim(module, force=force) == module.dim ** 2:
        return SimplicityVerdict("simple")
    return SimplicityVerdict("undetermined-nonsplit")


# -- intertwiners --------------------------------------------------------

def _intertwiner_equations(m: MatrixModule, n: MatrixModule):
    rows = []
    nm, nn = m.dim, n.dim
    for g in m.pres.generators:
        gm = m.action[g]
        gnt = transpose(n.action[g], nn)
        for i in range(nm):
            for j in range(nn):
                # equation for entry (i, j) of G^M P - P G^N
                row: Vec = {k * nn + j: x for k, x in gm[i].items()}
                for k, y in gnt[j].items():
                    p = i * nn + k
                    s = row.get(p)
                    s = -y if s is None else s - y
                    if s.is_zero():
                        row.pop(p, None)
                    else:
                        row[p] = s
                if row:
                    rows.append(row)
    return rows


def hom_space(m: MatrixModule, n: MatrixModule) -> list[Mat]:
    """Basis of {P : G_g^M P = P G_g^N for all generators g}."""
    if m.l != n.l:
        raise OrderMismatchError("modules live over different root orders")
    if m.pres.name != n.pres.name:
        raise PresentationMismatchError("modules live over different presentations")
    sols = nullspace(_intertwiner_equations(m, n), m.dim * n.dim, m.l)
    return [unflatten(v, m.dim, n.dim) for v in sols]


def is_intertwiner(m: MatrixModule, n: MatrixModule, p: Mat) -> bool:
    return all(mat_eq(mat_mul(m.action[g], p), mat_mul(p, n.action[g]))
               for g in m.pres.generators)


def is_invertible(p: Mat, dim: int, l: int) -> bool:
    try:
        mat_inv(p, dim, l)
        return True
    except Exception:
        return False


# -- endomorphism algebra and indecomposability ---------------------------

@dataclass
class EndoAlgebra:
    """The intertwiner algebra of a module with its trace-form radical."""

    module: MatrixModule
    basis: tuple          # tuple[Mat]
    mult_table: tuple     # mult_table[i][j] = coords of basis[i] basis[j]
    gram: tuple           # gram[i][j] = trace(basis[i] basis[j])
    radical: tuple        # tuple[Mat]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def radical_dim(self) -> int:
        return len(self.radical)


def endo_algebra(module: MatrixModule) -> EndoAlgebra:
    if "endo" in module._cache:
        return module._cache["endo"]
    n, l = module.dim, module.l
    sols, frees = nullspace_with_frees(
        _intertwiner_equations(module, module), n * n, l)
    basis = [unflatten(v, n, n) for v in sols]
    zero = CycloNum.zero(l)

    def coords(mat: Mat):
        flat = flatten_mat(mat, n)
        return tuple(flat.get(f, zero) for f in frees)

    k = len(basis)
    table = []
    gram = []
    for i in range(k):
        trow = []
        grow = []
        for j in range(k):
            prod = mat_mul(basis[i], basis[j])
            trow.append(coords(prod))
            grow.append(mat_trace(prod, l))
        table.append(tuple(trow))
        gram.append(tuple(grow))
    # Dickson criterion (char 0): x in rad iff trace(x y) = 0 for all y
    rad_rows = [{i: gram[i][j] for i in range(k) if not gram[i][j].is_zero()}
                for j in range(k)]
    rad_coords = nullspace(rad_rows, k, l)
    radical = []
    for c in rad_coords:
        mat = [dict() for _ in range(n)]
        for i, x in c.items():
            mat = [vec_add_scaled(r, b, x) for r, b in zip(mat, basis[i])]
        radical.append(mat)
    endo = EndoAlgebra(module, tuple(basis), tuple(table), tuple(gram),
                       tuple(radical))
    module._cache["endo"] = endo
    return endo


def is_indecomposable(module: MatrixModule) -> bool:
    """True iff the endomorphism algebra is local with scalar residue."""
    e = endo_algebra(module)
    return e.dim - e.radical_dim == 1


def has_invariant_complement(module: MatrixModule, w: Subspace) -> bool:
    """Whether an invariant subspace splits off as a direct summand.

    Solvable iff there is a projection onto w commuting with the action:
    pi in End(M), image inside w, restriction to w the identity.
    """
    if not w.is_invariant(module):
        raise InvalidParameterError("subspace is not invariant")
    n, l = module.dim, module.l
    if w.dim == n:
        return True
    rows = _intertwiner_equations(module, module)
    rhs = [CycloNum.zero(l)] * len(rows)
    piv_set = set(w.pivots)
    # image(pi) inside w: each row of pi reduces to zero against w
    for i in range(n):
        for c in range(n):
            if c in piv_set:
                continue
            row: Vec = {i * n + c: CycloNum.one(l)}
            for piv, wrow in zip(w.pivots, w.rows):
                x = wrow.get(c)
                if x is not None:
                    row[i * n + piv] = -x
            rows.append(row)
            rhs.append(CycloNum.zero(l))
    # pi restricted to w is the identity
    for wrow in w.rows:
        for c in range(n):
            row = {i * n + c: x for i, x in wrow.items()}
            rows.append(row)
            rhs.append(wrow.get(c, CycloNum.zero(l)))
    return solve_affine(rows, rhs, n * n, l) is not None


# -- constructions used by tests and callers ------------------------------

def direct_sum(m: MatrixModule, n: MatrixModule) -> MatrixModule:
    if m.l != n.l or m.pres.name != n.pres.name:
        raise PresentationMismatchError("direct sum needs matching presentations")
    dim = m.dim + n.dim
    action = {}
    for g in m.pres.generators:
        top = [dict(row) for row in m.action[g]]
        bottom = [{j + m.dim: x for j, x in row.items()} for row in n.action[g]]
        action[g] = top + bottom
    labels = tuple((0, lab) for lab in m.labels) + tuple((1, lab) for lab in n.labels)
    return make_module(m.l, m.pres, labels, action, check=False)


def conjugate(module: MatrixModule, p: Mat) -> MatrixModule:
    """Base change by an invertible matrix (same module up to isomorphism)."""
    pinv = mat_inv(p, module.dim, module.l)
    action = {g: mat_mul(mat_mul(p, mat), pinv)
              for g, mat in module.action.items()}
    return make_module(module.l, module.pres, module.labels, action, check=False)


# -- JSON form -------------------------------------------------------------

def module_to_json(module: MatrixModule) -> dict:
    dense = {}
    zero = CycloNum.zero(module.l)
    for g, mat in module.action.items():
        dense[g.value] = [[(row.get(j, zero)).to_strings()
                           for j in range(module.dim)] for row in mat]
    return {
        "l": module.l,
        "presentation": module.pres.name,
        "dim": module.dim,
        "labels": [list(lab) if isinstance(lab, (tuple, list)) else lab
                   for lab in module.labels],
        "matrices": dense,
    }


def module_from_json(data: dict, check: bool = True) -> MatrixModule:
    l = data["l"]
    pres = PRESENTATIONS[data["presentation"]]
    labels = [tuple(lab) if isinstance(lab, list) else lab
              for lab in data["labels"]]
    by_name = {g.value: g for g in Gen}
    action = {}
    for name, rows in data["matrices"].items():
        mat = [[CycloNum.from_strings(l, entry) for entry in row] for row in rows]
        action[by_name[name]] = mat_from_dense(mat)
    return make_module(l, pres, labels, action, check=check)
