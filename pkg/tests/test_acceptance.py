"""Acceptance battery: every criterion exact, one printed line per criterion.

All checks are zero-tolerance (exact arithmetic); the few wall-clock
budgets are asserted with time.monotonic.
"""

import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction

from qsaa.cyclo import CycloNum, euler_phi, ord_q2, q_int, q_power
from qsaa.linalg import identity, mat_eq, mat_mul
from qsaa.pbw import (
    PHIPSI,
    QSAA,
    SMASH,
    AlgebraElement,
    Gen,
    PBWMonomial,
    is_central,
    normal_form,
    phi_element,
    psi_element,
)
from qsaa.pidegree import (
    QSAA_EXPONENTS,
    QSAA_EXPONENTS_REDUCED,
    SMASH_EXPONENTS,
    image_cardinality_bruteforce,
    pi_degree_from_factors,
    pideg_qsaa,
    pideg_smash,
    skew_normal_form,
)
from qsaa.rep import (
    act,
    algebra_closure_dim,
    conjugate,
    endo_algebra,
    has_invariant_complement,
    hom_space,
    is_intertwiner,
    is_invertible,
    is_simple,
    verify_relations,
)
from qsaa.simple_mods import (
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
)
from qsaa.smash import build_n1, lift_to_A
from qsaa.verma import build_q, chain_submodules, verdicts


@contextmanager
def criterion(number, description):
    try:
        yield
    except BaseException:
        print(f"criterion {number}: FAIL - {description}")
        raise
    print(f"criterion {number}: PASS - {description}")


def q(l, k=1):
    return q_power(l, k)


def test_criterion_1_pi_degree_table():
    with criterion(1, "PI-degree table, invariant factors, brute-force cross-check"):
        started = time.monotonic()
        expected = {3: 9, 4: 8, 5: 25, 6: 18, 7: 49, 8: 32}
        for l, value in expected.items():
            assert pideg_qsaa(l) == value, (l, value)
            assert pideg_smash(l) == value, (l, value)
        assert skew_normal_form(QSAA_EXPONENTS_REDUCED).doubled_factors == (1, 1, 2, 2)
        assert skew_normal_form(QSAA_EXPONENTS).doubled_factors == (1, 1, 2, 2)
        assert skew_normal_form(SMASH_EXPONENTS).doubled_factors == (1, 1, 2, 2)
        for l in range(3, 7):
            for mat in (QSAA_EXPONENTS, SMASH_EXPONENTS):
                h = image_cardinality_bruteforce(mat, l)
                assert pi_degree_from_factors(skew_normal_form(mat).factors,
                                              l) ** 2 == h
        elapsed = time.monotonic() - started
        assert elapsed < 10, f"runtime {elapsed:.1f}s over budget"


def test_criterion_2_pbw_identity_suite():
    with criterion(2, "commutation identity sweeps at l = 3, 4, 5, exact"):
        started = time.monotonic()
        for l in (3, 4, 5):
            g = {t: AlgebraElement.generator(QSAA, l, t) for t in QSAA.generators}
            x, y, e, k = g[Gen.X], g[Gen.Y], g[Gen.E], g[Gen.K]
            for i in range(1, 2 * l + 1):
                assert e * y ** i == q(l, -i) * (y ** i * e) + \
                    q_int(l, i) * (x * y ** (i - 1))
                c = q(l) * (1 - q(l, 2 * i)) / (1 - q(l, 2))
                assert y * e ** i == q(l, i) * (e ** i * y) - c * (x * e ** (i - 1))
            gs = {t: AlgebraElement.generator(SMASH, l, t) for t in SMASH.generators}
            xs, ys, es, ks, kis, fs = (gs[t] for t in
                                       (Gen.X, Gen.Y, Gen.E, Gen.K, Gen.KINV, Gen.F))
            inv_qq = (q(l) - q(l, -1)).inv()
            for s in range(1, 2 * l + 1):
                c = (1 - q(l, 2 * s)) / (1 - q(l, 2))
                assert fs * xs ** s == xs ** s * fs + c * (ys * kis * xs ** (s - 1))
                assert xs * fs ** s == fs ** s * xs - c * (ys * fs ** (s - 1) * kis)
                num = (q(l, s) - q(l, -s)) * inv_qq
                assert es * fs ** s == fs ** s * es + num * (
                    fs ** (s - 1) * ((ks * q(l, 1 - s) - kis * q(l, s - 1)) * inv_qq))
                assert fs * es ** s == es ** s * fs - num * (
                    es ** (s - 1) * ((ks * q(l, s - 1) - kis * q(l, 1 - s)) * inv_qq))
            gb = {t: AlgebraElement.generator(PHIPSI, l, t) for t in PHIPSI.generators}
            xb, yb, kb, pb, sb = (gb[t] for t in
                                  (Gen.X, Gen.Y, Gen.K, Gen.PHI, Gen.PSI))
            kyx = kb * yb * xb
            for s in range(1, 2 * l + 1):
                assert sb ** s * pb == pb * sb ** s + \
                    q(l) * (1 - q(l, 2 * s)) * (kyx * sb ** (s - 1))
                assert sb * pb ** s == pb ** s * sb + \
                    q(l, 3) * (q(l, -2 * s) - 1) * (kyx * pb ** (s - 1))
            # the normal element: both closed forms and the four commutations
            phi = phi_element(l)
            assert phi == x + (q(l, -1) - q(l)) * (y * e)
            assert phi == q(l, 2) * x + (1 - q(l, 2)) * (e * y)
            assert x * phi == phi * x
            assert y * phi == q(l) * (phi * y)
            assert e * phi == q(l, -1) * (phi * e)
            assert k * phi == q(l) * (phi * k)
        elapsed = time.monotonic() - started
        assert elapsed < 30, f"runtime {elapsed:.1f}s over budget"


def test_criterion_3_centrality():
    with criterion(3, "central elements at l = 3, 4, 5, 6, exact"):
        def mono(pres, l, **kw):
            return AlgebraElement.monomial(
                pres, l, PBWMonomial(kw.get("a", 0), kw.get("b", 0),
                                     kw.get("c", 0), kw.get("d", 0), kw.get("e", 0)))

        for l in (3, 4, 5, 6):
            for kw in ({"d": l}, {"d": -l}, {"c": l}, {"a": l}, {"b": l}):
                assert is_central(mono(QSAA, l, **kw)), ("qsaa", l, kw)
            for kw in ({"d": l}, {"d": -l}, {"c": l}, {"e": l}, {"a": l}, {"b": l}):
                assert is_central(mono(SMASH, l, **kw)), ("smash", l, kw)
            for kw in ({"d": l}, {"d": -l}, {"a": l}, {"b": l}, {"c": l}, {"e": l}):
                assert is_central(mono(PHIPSI, l, **kw)), ("phipsi", l, kw)


def _family_grids(l):
    qq = q(l)
    return {
        "m1": [(1, 1, 1, 1), (1, 2, 1, 1), (qq, 1, 1, 1), (1, qq, qq, 1),
               (2, 2, 1, qq), (1, 1, 2, 1), (1, 1, 1, 2), (qq * qq, qq, 1, 1),
               (2, 1, qq, 1), (1, qq * qq, 1, qq), (1, 1 * qq ** 2, 2, 1)],
        "m2": [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (qq, 1, 1),
               (1, qq, 1), (1, 1, qq), (qq, 2, 1), (2, qq, qq), (qq * qq, 1, 2)],
        "m3": [(1, 1), (2, 1), (1, 2), (qq, 1), (1, qq), (qq, 2), (2, qq),
               (qq * qq, 1), (1, qq * qq), (2, 2)],
    }


def test_criterion_4_module_constructions():
    with criterion(4, "family constructions simple with full closure on grids"):
        started = time.monotonic()
        builders = {"m1": build_m1, "m2": build_m2, "m3": build_m3}
        for l in (3, 4):
            n2 = (ord_q2(l) * l) ** 2
            grids = _family_grids(l)
            for kind, grid in grids.items():
                assert len(grid) >= 10
                # grids include the degenerate mu2 = mu1 point
                for params in grid:
                    m = builders[kind](l, params)
                    assert verify_relations(m) == []
                    assert algebra_closure_dim(m) == n2, (l, kind, params)
                    assert is_simple(m).kind == "simple"
        elapsed = time.monotonic() - started
        assert elapsed < 120, f"runtime {elapsed:.1f}s over budget"


def _iso_pair_lists(l):
    qq = q(l)
    l1 = ord_q2(l)
    m1_pairs, m2_pairs, m3_pairs = [], [], []
    for mu in [(1, 1, 1, 1), (2, 1, 1, 1), (1, 2, 1, 1), (1, 1, 2, 1), (2, 3, 1, 1)]:
        p = ParamsM1.of(l, mu)
        for r1 in range(l1):
            for r2 in range(l):
                m1_pairs.append((mu, (p.mu1 * q(l, -(r1 + r2)),
                                      p.mu2 * q(l, r1 - r2), p.mu3, p.mu4)))
        m1_pairs.append((mu, (p.mu1, p.mu2, p.mu3 * 2, p.mu4)))
        m1_pairs.append((mu, (p.mu1 * 2, p.mu2, p.mu3, p.mu4)))
        m1_pairs.append((mu, (p.mu1, p.mu2, p.mu3 * qq, p.mu4)))
    for mu in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 3), (3, 2, 1)]:
        p = ParamsM2.of(l, mu)
        for r1 in range(l1):
            for r2 in range(l):
                m2_pairs.append((mu, (p.mu1 * q(l, r1 - r2), p.mu2, p.mu3)))
        m2_pairs.append((mu, (p.mu1, p.mu2 * 2, p.mu3)))
        m2_pairs.append((mu, (p.mu1 * 2, p.mu2, p.mu3)))
        m2_pairs.append((mu, (p.mu1, p.mu2 * qq, p.mu3)))
    for mu in [(1, 1), (2, 1), (1, 2), (3, 1), (2, 3), (1, 3), (3, 2),
               (qq, 1), (1, qq), (2, 2)]:
        p = ParamsM3.of(l, mu)
        for r in range(l):
            m3_pairs.append((mu, (p.mu1 * q(l, -r), p.mu2)))
        m3_pairs.append((mu, (p.mu1 * 2, p.mu2)))
        m3_pairs.append((mu, (p.mu1, p.mu2 * 2)))
        m3_pairs.append((mu, (p.mu1, p.mu2 * qq)))
    return m1_pairs, m2_pairs, m3_pairs


def test_criterion_5_isomorphism_deciders():
    with criterion(5, "deciders match the Hom oracle; explicit intertwiners invertible"):
        for l in (3, 4):
            m1_pairs, m2_pairs, m3_pairs = _iso_pair_lists(l)
            cases = [(iso_m1, build_m1, explicit_iso_m1, m1_pairs),
                     (iso_m2, build_m2, explicit_iso_m2, m2_pairs),
                     (iso_m3, build_m3, explicit_iso_m3, m3_pairs)]
            for decider, builder, explicit, pairs in cases:
                assert len(pairs) >= 50
                for mu, gamma in pairs:
                    witness = decider(l, mu, gamma)
                    m, g = builder(l, mu), builder(l, gamma)
                    dim = len(hom_space(m, g))
                    assert (witness is not None) == (dim == 1), (l, mu, gamma)
                    if witness is not None:
                        p = explicit(l, mu, gamma, witness)
                        assert is_intertwiner(m, g, p)
                        assert is_invertible(p, m.dim, l)
            # cross-family Hom always vanishes
            reps = (build_m1(l, (1, 2, 1, 1)), build_m2(l, (1, 1, 1)),
                    build_m3(l, (1, 1)))
            for a, b in itertools.permutations(reps, 2):
                assert hom_space(a, b) == []


def test_criterion_6_classification_round_trip():
    with criterion(6, "classification round-trips for all families at l = 3, 4"):
        deciders = {"m1": iso_m1, "m2": iso_m2, "m3": iso_m3}
        builders = {"m1": build_m1, "m2": build_m2, "m3": build_m3}
        grids = {
            "m1": [(1, 2, 1, 1), (2, 1, 2, 1)],
            "m2": [(1, 1, 1), (2, 1, 1)],
            "m3": [(1, 1), (2, 1)],
        }
        for l in (3, 4):
            for kind, grid in grids.items():
                for params in grid:
                    m = builders[kind](l, params)
                    res = classify(m)
                    assert res.kind == kind, (l, kind, params, res.kind)
                    assert deciders[kind](l, params, res.params.astuple()) is not None
                    assert is_intertwiner(builders[kind](l, res.params), m,
                                          res.intertwiner)
                    assert is_invertible(res.intertwiner, m.dim, l)


def test_criterion_7_verma_quotients():
    with criterion(7, "quotient verdicts: simple / non-semisimple / indecomposable"):
        started = time.monotonic()
        q1 = build_q(3, 1, (1, 1))
        assert verify_relations(q1) == []
        assert algebra_closure_dim(q1) == 81
        assert is_simple(q1).kind == "simple"
        assert verdicts(3, 1, (1, 1)) == {"simple": True, "semisimple": True,
                                          "indecomposable": True}
        for p in (2, 3):
            m = build_q(3, p, (1, 1))
            assert verify_relations(m) == []
            verdict = is_simple(m)
            chain = chain_submodules(3, p)
            assert verdict.kind == "not-simple"
            assert any(verdict.witness == w for w in chain)
            for w in chain:
                assert w.is_invariant(m)
                assert not has_invariant_complement(m, w)
            e = endo_algebra(m)
            assert e.dim - e.radical_dim == 1
            assert verdicts(3, p, (1, 1)) == {"simple": False, "semisimple": False,
                                              "indecomposable": True}
        elapsed = time.monotonic() - started
        assert elapsed < 120, f"runtime {elapsed:.1f}s over budget"


def test_criterion_8_smash_correspondence():
    with criterion(8, "phi/psi modules and their lifts: relations, simplicity, dim l^2"):
        l = 3
        qq = q(l)
        assert pideg_smash(l) == 9
        grid = [(1, 1, lam3, xi, alpha)
                for lam3 in (0, 1, qq)
                for alpha in (1, qq, 2)
                for xi in (1, qq, 2)]
        assert len(grid) == 27
        for params in grid:
            m = build_n1(l, params)
            assert verify_relations(m) == []
            assert m.dim == l * l
            lifted = lift_to_A(m)
            assert verify_relations(lifted) == []
            assert algebra_closure_dim(m) == 81
            assert algebra_closure_dim(lifted) == 81
            assert is_simple(m).kind == "simple"
            assert is_simple(lifted).kind == "simple"
            assert mat_eq(act(lifted, phi_element(l, SMASH)), m.action[Gen.PHI])
            assert mat_eq(act(lifted, psi_element(l)), m.action[Gen.PSI])


def test_criterion_9_property_suites():
    seeds = {"axioms": 20240, "words": 20241, "act": 20242, "conj": 20243}
    with criterion(9, f"randomized property suites, seeds {sorted(seeds.values())}"):
        rng = random.Random(seeds["axioms"])
        for l in (3, 4, 5, 6):
            deg = euler_phi(l)
            for _ in range(100):
                a, b, c = (CycloNum(l, [Fraction(rng.randint(-4, 4),
                                                 rng.randint(1, 3))
                                        for _ in range(deg)]) for _ in range(3))
                assert (a + b) + c == a + (b + c)
                assert (a * b) * c == a * (b * c)
                assert a * b == b * a
                assert a * (b + c) == a * b + a * c
        rng = random.Random(seeds["words"])
        for pres in (QSAA, SMASH, PHIPSI):
            for _ in range(500):
                word = [rng.choice(pres.generators)
                        for _ in range(rng.randint(0, 8))]
                assert normal_form(word, 3, pres, "leftmost") == \
                    normal_form(word, 3, pres, "rightmost")
        rng = random.Random(seeds["act"])
        module = build_m2(3, (1, 1, 1))
        for _ in range(50):
            words = [[rng.choice(QSAA.generators) for _ in range(rng.randint(0, 4))]
                     for _ in range(2)]
            u, v = (normal_form(w, 3, QSAA) for w in words)
            assert mat_eq(act(module, u * v),
                          mat_mul(act(module, u), act(module, v)))
        rng = random.Random(seeds["conj"])
        m = build_m3(3, (1, 1))
        base = algebra_closure_dim(m)
        for _ in range(3):
            p = identity(m.dim, m.l)
            for _ in range(4):
                i, j = rng.sample(range(m.dim), 2)
                t = identity(m.dim, m.l)
                t[i][j] = CycloNum.from_rational(m.l, rng.choice((1, -1, 2)))
                p = mat_mul(p, t)
            assert algebra_closure_dim(conjugate(m, p)) == base
