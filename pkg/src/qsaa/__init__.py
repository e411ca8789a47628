"""qsaa: exact workbench for the quantum spatial ageing algebra at a root of unity.

Everything is computed over Q(zeta_l) with exact rational arithmetic:
PBW rewriting and identity checking for the algebra, its smash-product
extension and the phi/psi subalgebra; PI degrees from skew normal forms
with a brute-force oracle; and finite-dimensional right modules with
simplicity, Hom-space, and indecomposability tests.
"""

from .cyclo import (
    CycloNum,
    Rational,
    RootOrder,
    cyclotomic_polynomial,
    euler_phi,
    ord_q2,
    parse_cyclo,
    q_int,
    q_power,
)
from .pbw import (
    PHIPSI,
    PRESENTATIONS,
    QSAA,
    SMASH,
    AlgebraElement,
    Gen,
    PBWMonomial,
    Presentation,
    embed_to_smash,
    gens,
    is_central,
    multiply,
    normal_form,
    parse_element,
    phi_element,
    psi_element,
    verify_identity,
)
from .pidegree import (
    QSAA_EXPONENTS,
    QSAA_EXPONENTS_REDUCED,
    SMASH_EXPONENTS,
    SkewIntMatrix,
    SkewNormalForm,
    image_cardinality_bruteforce,
    pi_degree_from_factors,
    pideg_qsaa,
    pideg_smash,
    skew_normal_form,
)
from .rep import (
    EndoAlgebra,
    MatrixModule,
    SimplicityVerdict,
    Subspace,
    act,
    algebra_closure_dim,
    basis_vector,
    central_scalar,
    conjugate,
    direct_sum,
    endo_algebra,
    has_invariant_complement,
    hom_space,
    is_indecomposable,
    is_intertwiner,
    is_invertible,
    is_simple,
    make_module,
    module_from_json,
    module_to_json,
    phi_matrix,
    psi_matrix,
    spin_up,
    verify_relations,
)
from .simple_mods import (
    ClassifyResult,
    EigenData,
    IsoWitness,
    ParamsM1,
    ParamsM2,
    ParamsM3,
    build_m1,
    build_m2,
    build_m3,
    classify,
    explicit_iso_m1,
    explicit_iso_m2,
    explicit_iso_m3,
    iso_m1,
    iso_m2,
    iso_m3,
    lth_root,
)
from .smash import BModuleParams, build_n1, eigendata_of, lift_to_A
from .suite import run_suite
from .verma import (
    QuotientSpec,
    VermaParams,
    build_q,
    chain_submodules,
    spin_up_census,
    verdicts,
)

__version__ = "0.1.0"
