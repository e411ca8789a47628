"""Verification battery behind the ``suite`` CLI subcommand.

Each check is a named callable returning pass/fail details; the runner
executes them on a bounded worker pool (QSAA_WORKERS) and assembles the
results in declaration order, so concurrency never changes the report.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .cyclo import CycloNum, euler_phi, ord_q2, q_int, q_power
from .errors import QsaaError, ResourceLimitError
from .linalg import identity, mat_eq, mat_mul
from .pbw import (
    PHIPSI,
    QSAA,
    SMASH,
    AlgebraElement,
    Gen,
    PBWMonomial,
    is_central,
    normal_form,
    phi_element,
)
from .pidegree import (
    QSAA_EXPONENTS,
    SMASH_EXPONENTS,
    image_cardinality_bruteforce,
    pi_degree_from_factors,
    pideg_qsaa,
    pideg_smash,
    skew_normal_form,
)
from .rep import (
    act,
    algebra_closure_dim,
    conjugate,
    hom_space,
    is_intertwiner,
    is_invertible,
    is_simple,
    verify_relations,
)
from .simple_mods import (
    build_m1,
    build_m2,
    build_m3,
    classify,
    explicit_iso_m1,
    iso_m1,
    iso_m2,
    iso_m3,
)
from .smash import build_n1, lift_to_A
from .verma import build_q, chain_submodules, verdicts


def _check(name, fn):
    try:
        detail = fn()
        return {"check": name, "status": "pass", "details": detail or ""}
    except AssertionError as exc:
        return {"check": name, "status": "fail", "details": str(exc) or "assertion failed"}
    except ResourceLimitError as exc:
        return {"check": name, "status": "undetermined", "details": f"guard: {exc}"}
    except QsaaError as exc:
        return {"check": name, "status": "fail", "details": f"{type(exc).__name__}: {exc}"}


def _pideg_checks(l):
    def table():
        expected = l * l if l % 2 else l * l // 2
        assert pideg_qsaa(l) == expected, f"qsaa pideg {pideg_qsaa(l)} != {expected}"
        assert pideg_smash(l) == expected
        return f"pideg = {expected}"

    def factors():
        for mat in (QSAA_EXPONENTS, SMASH_EXPONENTS):
            snf = skew_normal_form(mat)
            assert snf.doubled_factors == (1, 1, 2, 2), snf.doubled_factors
        return "invariant factors 1,1,2,2"

    def bruteforce():
        for mat in (QSAA_EXPONENTS, SMASH_EXPONENTS):
            h = image_cardinality_bruteforce(mat, l)
            pd = pi_degree_from_factors(skew_normal_form(mat).factors, l)
            assert pd * pd == h, (pd, h)
        return "sqrt(image cardinality) matches"

    return [("pideg.table", table), ("pideg.invariant_factors", factors),
            ("pideg.bruteforce_crosscheck", bruteforce)]


def _pbw_checks(l):
    def ey_identities():
        g = {gen: AlgebraElement.generator(QSAA, l, gen) for gen in QSAA.generators}
        x, y, e = g[Gen.X], g[Gen.Y], g[Gen.E]
        q = lambda k: q_power(l, k)
        for i in range(1, 2 * l + 1):
            assert e * y ** i == q(-i) * (y ** i * e) + q_int(l, i) * (x * y ** (i - 1))
            c = q(1) * (1 - q(2 * i)) / (1 - q(2))
            assert y * e ** i == q(i) * (e ** i * y) - c * (x * e ** (i - 1))
        return f"swept i = 1..{2 * l}"

    def f_identities():
        g = {gen: AlgebraElement.generator(SMASH, l, gen) for gen in SMASH.generators}
        x, y, e, k, ki, f = (g[t] for t in
                             (Gen.X, Gen.Y, Gen.E, Gen.K, Gen.KINV, Gen.F))
        q = lambda j: q_power(l, j)
        inv_qq = (q(1) - q(-1)).inv()
        for s in range(1, 2 * l + 1):
            c = (1 - q(2 * s)) / (1 - q(2))
            assert f * x ** s == x ** s * f + c * (y * ki * x ** (s - 1))
            assert x * f ** s == f ** s * x - c * (y * f ** (s - 1) * ki)
            num = (q(s) - q(-s)) * inv_qq
            assert e * f ** s == f ** s * e + num * (f ** (s - 1) *
                                                     ((k * q(1 - s) - ki * q(s - 1)) * inv_qq))
            assert f * e ** s == e ** s * f - num * (e ** (s - 1) *
                                                     ((k * q(s - 1) - ki * q(1 - s)) * inv_qq))
        gb = {gen: AlgebraElement.generator(PHIPSI, l, gen) for gen in PHIPSI.generators}
        xb, yb, kb, pb, sb = (gb[t] for t in
                              (Gen.X, Gen.Y, Gen.K, Gen.PHI, Gen.PSI))
        kyx = kb * yb * xb
        for s in range(1, 2 * l + 1):
            assert sb ** s * pb == pb * sb ** s + q(1) * (1 - q(2 * s)) * (kyx * sb ** (s - 1))
            assert sb * pb ** s == pb ** s * sb + q(3) * (q(-2 * s) - 1) * (kyx * pb ** (s - 1))
        return f"swept s = 1..{2 * l}"

    def phi_expressions():
        q = lambda k: q_power(l, k)
        g = {gen: AlgebraElement.generator(QSAA, l, gen) for gen in QSAA.generators}
        x, y, e, k = g[Gen.X], g[Gen.Y], g[Gen.E], g[Gen.K]
        phi = phi_element(l)
        assert phi == x + (q(-1) - q(1)) * (y * e)
        assert phi == q(2) * x + (1 - q(2)) * (e * y)
        assert x * phi == phi * x
        assert y * phi == q(1) * (phi * y)
        assert e * phi == q(-1) * (phi * e)
        assert k * phi == q(1) * (phi * k)
        return "both expressions and all four commutation rules"

    def centrality():
        for pres, kwargs in ((QSAA, ({"a": l}, {"b": l}, {"c": l}, {"d": l}, {"d": -l})),
                             (SMASH, ({"a": l}, {"b": l}, {"c": l}, {"d": l},
                                      {"d": -l}, {"e": l})),
                             (PHIPSI, ({"a": l}, {"b": l}, {"c": l}, {"d": l},
                                       {"d": -l}, {"e": l}))):
            for kw in kwargs:
                mono = PBWMonomial(kw.get("a", 0), kw.get("b", 0), kw.get("c", 0),
                                   kw.get("d", 0), kw.get("e", 0))
                assert is_central(AlgebraElement.monomial(pres, l, mono)), (pres.name, kw)
        return "all l-th powers central"

    return [("pbw.ey_power_identities", ey_identities),
            ("pbw.f_power_identities", f_identities),
            ("pbw.phi_expressions", phi_expressions),
            ("pbw.centrality", centrality)]


def _module_checks(l):
    n2 = (ord_q2(l) * l) ** 2

    def families():
        for builder, params in ((build_m1, (1, 2, 1, 1)), (build_m2, (1, 1, 1)),
                                (build_m3, (1, 1))):
            m = builder(l, params)
            assert verify_relations(m) == []
            assert algebra_closure_dim(m) == n2
            assert is_simple(m).kind == "simple"
        return f"three families simple with closure {n2}"

    def iso_oracle():
        # gamma is mu shifted by (r1, r2) = (1, 1)
        mu, gamma = (1, 2, 1, 1), (q_power(l, -2), 2, 1, 1)
        w = iso_m1(l, mu, gamma)
        m, g = build_m1(l, mu), build_m1(l, gamma)
        dim = len(hom_space(m, g))
        assert (w is not None) == (dim == 1)
        if w is not None:
            p = explicit_iso_m1(l, mu, gamma, w)
            assert is_intertwiner(m, g, p) and is_invertible(p, m.dim, l)
        bad = (1, 2, 3, 1)
        assert (iso_m1(l, mu, bad) is not None) == (len(hom_space(m, build_m1(l, bad))) == 1)
        return "decider matches Hom oracle"

    def round_trip():
        for kind, builder, decider, params in (
                ("m1", build_m1, iso_m1, (1, 2, 1, 1)),
                ("m2", build_m2, iso_m2, (1, 1, 1)),
                ("m3", build_m3, iso_m3, (1, 1))):
            res = classify(builder(l, params))
            assert res.kind == kind
            assert decider(l, params, res.params.astuple()) is not None
        return "classification returns isomorphic parameters"

    return [("modules.families", families), ("modules.iso_oracle", iso_oracle),
            ("modules.classification_round_trip", round_trip)]


def _verma_checks(l):
    def quotients():
        assert verdicts(l, 1, (1, 1)) == {"simple": True, "semisimple": True,
                                          "indecomposable": True}
        v2 = verdicts(l, 2, (1, 1))
        assert v2 == {"simple": False, "semisimple": False, "indecomposable": True}
        assert [w.dim for w in chain_submodules(l, 2)] == [l * l]
        assert algebra_closure_dim(build_q(l, 1, (1, 1))) == l ** 4
        return "verdicts as expected for p = 1, 2"

    return [("verma.quotients", quotients)]


def _smash_checks(l):
    def n1_and_lift():
        m = build_n1(l, (1, 1, 0, 1, 1))
        assert verify_relations(m) == []
        assert algebra_closure_dim(m) == l ** 4
        lifted = lift_to_A(m)
        assert verify_relations(lifted) == []
        assert algebra_closure_dim(lifted) == l ** 4
        return f"relations and simplicity at dimension {l * l}"

    return [("smash.n1_and_lift", n1_and_lift)]


def _property_checks(l, seed):
    def field_axioms():
        rng = random.Random(seed)
        deg = euler_phi(l)
        for _ in range(100):
            a, b, c = (CycloNum(l, [Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                                    for _ in range(deg)]) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
        return f"100 random triples, seed {seed}"

    def normal_form_uniqueness():
        rng = random.Random(seed + 1)
        for pres in (QSAA, SMASH, PHIPSI):
            for _ in range(100):
                word = [rng.choice(pres.generators) for _ in range(rng.randint(0, 8))]
                assert normal_form(word, l, pres, "leftmost") == \
                    normal_form(word, l, pres, "rightmost")
        return f"100 words per presentation, seed {seed + 1}"

    def act_multiplicative():
        rng = random.Random(seed + 2)
        m = build_m2(l, (1, 1, 1))
        for _ in range(10):
            words = [[rng.choice(QSAA.generators) for _ in range(rng.randint(0, 4))]
                     for _ in range(2)]
            u, v = (normal_form(w, l, QSAA) for w in words)
            assert mat_eq(act(m, u * v), mat_mul(act(m, u), act(m, v)))
        return f"10 random pairs, seed {seed + 2}"

    def closure_base_change():
        rng = random.Random(seed + 3)
        m = build_m3(l, (1, 1))
        p = identity(m.dim, l)
        for _ in range(4):
            i, j = rng.sample(range(m.dim), 2)
            t = identity(m.dim, l)
            t[i][j] = CycloNum.from_rational(l, rng.choice((1, -1)))
            p = mat_mul(p, t)
        assert algebra_closure_dim(conjugate(m, p)) == algebra_closure_dim(m)
        return f"transvection base change, seed {seed + 3}"

    return [("properties.field_axioms", field_axioms),
            ("properties.normal_form_uniqueness", normal_form_uniqueness),
            ("properties.act_multiplicative", act_multiplicative),
            ("properties.closure_base_change", closure_base_change)]


def run_suite(l: int, seed: int = 0) -> list[dict]:
    """The full battery for one root order; results in declaration order."""
    checks = []
    checks += _pideg_checks(l)
    checks += _pbw_checks(l)
    checks += _module_checks(l)
    if l % 2:
        checks += _verma_checks(l)
        checks += _smash_checks(l)
    checks += _property_checks(l, seed)
    workers = int(os.environ.get("QSAA_WORKERS", "0")) or None
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_check, name, fn) for name, fn in checks]
            return [f.result() for f in futures]
    return [_check(name, fn) for name, fn in checks]
