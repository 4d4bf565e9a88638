import json

import numpy as np
import pytest

from choqlab import (
    AXIOMS,
    BUILTINS,
    CheckConfig,
    DomainKindError,
    DomainSpec,
    LovaszExtension,
    MedianAdditiveExtension,
    SymmetricLovaszExtension,
    brute_force_axiom_sweep,
    check,
    check_comonotonic_additivity,
    check_diagonal_sections,
    check_homogeneity,
    check_horizontal_max_additivity,
    check_horizontal_median_additivity,
    check_horizontal_min_additivity,
    check_negative_comonotonic,
    check_negative_horizontal_max,
    check_oddness_positive_orthant,
    check_positive_comonotonic,
    check_positive_horizontal_min,
    check_splitting,
    make_set_function,
    random_set_function,
)
from tests.conftest import PHI

FAST = CheckConfig(trials=300)
product2 = BUILTINS["product2"]
min2 = BUILTINS["min2"]
abs1 = BUILTINS["abs1"]


class Zero:
    n = 2

    def __call__(self, x):
        return 0.0


class Guarded:
    """Records every evaluation point and refuses points outside ``[lo, hi]``."""

    def __init__(self, f, lo, hi):
        self.f, self.lo, self.hi, self.n = f, lo, hi, f.n
        self.calls = 0

    def __call__(self, x):
        assert self.lo <= np.min(x) and np.max(x) <= self.hi, x
        self.calls += 1
        return self.f(x)


class TestComonotonic:
    def test_lovasz_passes(self, L):
        assert check_comonotonic_additivity(L, FAST).passed

    def test_hand_point(self, L):
        # 0.8 + 1.6 = 2.4 = f(0, 4)
        v = check_comonotonic_additivity(L, FAST, probes=[([-1, 2], [1, 2])])
        assert v.passed

    def test_product_witness(self):
        v = check_comonotonic_additivity(product2, FAST)
        assert not v.passed
        assert v.witness.inputs == {"x": [1.0, 1.0], "x_prime": [1.0, 1.0]}
        assert v.witness.gap == 2.0
        assert v.witness.source == "lattice"

    def test_median_pair_fails(self, M):
        v = check_comonotonic_additivity(M, FAST)
        assert not v.passed and v.witness.source == "lattice"

    def test_median_pair_documented_witness(self, M):
        v = check_comonotonic_additivity(M, FAST, probes=[([-1, 2], [1, 2])])
        assert v.witness.source == "probe"
        assert v.witness.lhs == pytest.approx(2.4) and v.witness.rhs == pytest.approx(2.3)

    def test_bad_probe(self, L):
        with pytest.raises(ValueError):
            check_comonotonic_additivity(L, FAST, probes=[([1, 2], [3, 1])])


class TestHorizontal:
    def test_min2_hmin(self, L_min):
        assert check_horizontal_min_additivity(min2, FAST).passed
        v = check_horizontal_min_additivity(L_min, FAST, probes=[([-3, 5], 2.0)])
        assert v.passed

    def test_cut_below_minimum(self, L):
        probes = [([3, 5], c) for c in (-1.0, 0.0, 2.0, 3.0)]
        assert check_horizontal_min_additivity(L, FAST, probes=probes).passed

    @pytest.mark.parametrize("chk", [check_horizontal_min_additivity, check_horizontal_max_additivity])
    def test_product_fails(self, chk):
        v = chk(product2, FAST)
        assert not v.passed and v.witness is not None

    def test_hmax(self, L, L_min):
        assert check_horizontal_max_additivity(L, FAST).passed
        assert check_horizontal_max_additivity(L_min, FAST).passed

    def test_hmedian_passes(self, L, S, M):
        for f in (S, M, L):
            assert check_horizontal_median_additivity(f, FAST).passed

    def test_hmedian_needs_centered_domain(self, S):
        with pytest.raises(DomainKindError):
            check_horizontal_median_additivity(S, CheckConfig(domain=DomainSpec.nonneg()))
        assert check_horizontal_median_additivity(S, CheckConfig(domain=DomainSpec.centered(3), trials=200)).passed

    @pytest.mark.parametrize("seed", range(5))
    def test_random_lovasz_passes(self, seed):
        L = LovaszExtension(random_set_function(3, seed, "general"))
        for chk in (check_comonotonic_additivity, check_horizontal_min_additivity, check_horizontal_max_additivity):
            assert chk(L, FAST).passed


class TestVariants:
    @pytest.mark.parametrize(
        "chk",
        [check_positive_comonotonic, check_negative_comonotonic, check_positive_horizontal_min,
         check_negative_horizontal_max, check_splitting],
    )
    def test_median_pair_passes(self, M, chk):
        assert chk(M, FAST).passed

    def test_product_positive_comonotonic(self):
        assert not check_positive_comonotonic(product2, FAST).passed

    def test_median_iff_parts(self):
        # Median additivity holds exactly when positive-min, negative-max and
        # splitting all hold.
        cands = [product2, min2, abs1, BUILTINS["max2"]]
        for seed in range(4):
            p = random_set_function(2, seed, "general")
            q = random_set_function(2, seed + 100, "general")
            cands += [MedianAdditiveExtension(p, q), LovaszExtension(p)]
        for f in cands:
            parts = all(
                chk(f, FAST).passed
                for chk in (check_positive_horizontal_min, check_negative_horizontal_max, check_splitting)
            )
            assert parts == check_horizontal_median_additivity(f, FAST).passed, f

    def test_domain_guard(self, M):
        with pytest.raises(DomainKindError):
            check_positive_comonotonic(M, CheckConfig(domain=DomainSpec.box(-1, 2)))


    def test_implications_on_lovasz(self):
        for seed in range(10):
            L = LovaszExtension(random_set_function(1 + seed % 4, seed, "general"))
            verdicts = {name: check(name, L, FAST).passed for name in
                        ("comonotonic", "hmin", "hmax", "pos-hmin", "hmedian")}
            if verdicts["comonotonic"]:
                assert all(verdicts.values()), verdicts


class TestSplitting:
    def test_symmetric_and_min(self, S, L_min):
        assert check_splitting(S, FAST).passed
        assert check_splitting(L_min, FAST, probes=[([-3, 5],)]).passed

    def test_product(self):
        v = check_splitting(product2, FAST, probes=[([-1, 1],)])
        assert not v.passed
        assert (v.witness.lhs, v.witness.rhs) == (-1.0, 0.0)


class TestDiagonal:
    def test_min2(self):
        v = check_diagonal_sections(min2, FAST)
        assert v.passed
        assert v.sub["diagonal/additive"].passed and v.sub["diagonal/odd"].passed

    def test_min2_full_line_section_fails(self):
        v = check_diagonal_sections(min2, FAST, subsets=[0b01], full_sections=True)
        assert not v.passed
        bad = v.sub["A={1}/full"]
        assert not bad.passed
        assert v.sub["A={1}/pos"].passed and v.sub["A={1}/neg"].passed

    def test_zero(self):
        assert check_diagonal_sections(Zero(), FAST, full_sections=True).passed

    def test_lovasz_positive_sections(self):
        for seed in range(3):
            L = LovaszExtension(random_set_function(3, seed, "general"))
            v = check_diagonal_sections(L, FAST, sides=("pos",))
            assert all(s.passed for k, s in v.sub.items() if k.endswith("/pos"))

    def test_non_centered_skips_diagonal(self, L):
        v = check_diagonal_sections(L, CheckConfig(domain=DomainSpec.nonneg(), trials=100))
        assert "diagonal/odd" not in v.sub and v.passed


class TestHomogeneity:
    def test_lovasz_positive(self, L):
        assert check_homogeneity(L, FAST, positive_only=True).passed

    def test_symmetric_full(self, S):
        assert check_homogeneity(S, FAST).passed

    def test_lovasz_full_fails(self, L):
        assert not check_homogeneity(L, FAST).passed

    def test_recorded_witness(self, L):
        v = check_homogeneity(L, FAST, probes=[([3, 0], -1.0)])
        assert v.witness.inputs == {"x": [3.0, 0.0], "c": -1.0}
        assert v.witness.lhs == pytest.approx(-1.2) and v.witness.rhs == pytest.approx(-0.9)


class TestOddness:
    def test_running_example_fails(self, L):
        v = check_oddness_positive_orthant(L, FAST, probes=[([3, 0],)])
        assert v.witness.lhs == pytest.approx(-1.2) and v.witness.rhs == pytest.approx(-0.9)
        assert not check_oddness_positive_orthant(L, FAST).passed

    def test_self_dual_passes(self):
        L = LovaszExtension(make_set_function(2, [0, 0.5, 0.5, 1]))
        S = SymmetricLovaszExtension(L.phi)
        assert check_oddness_positive_orthant(L, FAST).passed
        rng = np.random.default_rng(0)
        for x in rng.uniform(-5, 5, (500, 2)):
            assert L(x) == pytest.approx(S(x), abs=1e-12)

    def test_min_capacity(self, L_min):
        v = check_oddness_positive_orthant(L_min, FAST, probes=[([1, 2],)])
        assert (v.witness.lhs, v.witness.rhs) == (-2.0, -1.0)

    def test_nonzero_origin(self):
        # Oddness is about f - f(0).
        S = SymmetricLovaszExtension(make_set_function(2, [0.7, 0.5, 0.5, 1]))
        assert check_oddness_positive_orthant(S, FAST).passed


class TestEngine:
    def test_closure_respected(self, L):
        d = DomainSpec.box(-1.5, 2.5)
        g = Guarded(L, d.lo, d.hi)
        cfg = CheckConfig(domain=d, trials=300)
        for name in ("comonotonic", "hmin", "hmax", "splitting", "homogeneity"):
            check(name, g, cfg)
        assert g.calls > 0

    def test_witness_determinism(self):
        cfg = CheckConfig(trials=2000, seed=5, grid=())
        a = check_comonotonic_additivity(product2, cfg)
        b = check_comonotonic_additivity(product2, cfg)
        assert a.witness == b.witness and a.witness.source == "random"

    def test_jobs_do_not_change_verdicts(self, L):
        f = MedianAdditiveExtension(L.phi, make_set_function(2, [0, 0.5, 0.5, 1]))
        for name in ("comonotonic", "hmin"):
            base = CheckConfig(trials=3000, seed=9, grid=())
            a = check(name, f, base)
            b = check(name, f, CheckConfig(trials=3000, seed=9, grid=(), jobs=4))
            assert a == b

    def test_seed_changes_random_witness(self):
        a = check_comonotonic_additivity(product2, CheckConfig(trials=500, seed=1, grid=()))
        b = check_comonotonic_additivity(product2, CheckConfig(trials=500, seed=2, grid=()))
        assert a.witness.inputs != b.witness.inputs

    def test_lattice_agrees_with_sweep(self):
        for f in (product2, abs1):
            for name in ("comonotonic", "hmin", "hmax"):
                v = check(name, f, FAST)
                s = brute_force_axiom_sweep(f, f.n, range(-2, 3), name)
                assert v.witness.inputs == s.witness.inputs

    def test_dispatch(self, L):
        assert set(AXIOMS) >= {"comonotonic", "diagonal", "oddness-pos"}
        with pytest.raises(ValueError):
            check("associativity", L)
        v = check("homogeneity", L, FAST, positive_only=True)
        assert v.passed

    def test_verdict_json(self, M):
        v = check_diagonal_sections(M, FAST)
        json.dumps(v.to_dict())
        w = check_comonotonic_additivity(M, FAST)
        d = json.loads(json.dumps(w.to_dict()))
        assert d["witness"]["source"] == "lattice"

    def test_config_validation(self):
        for bad in ({"trials": 0}, {"abs_tol": -1.0}, {"seed": -1}, {"jobs": 0}):
            with pytest.raises(ValueError):
                CheckConfig(**bad)

    def test_arity_required(self):
        with pytest.raises(TypeError):
            check_splitting(lambda x: 0.0, FAST)
        assert check_splitting(lambda x: float(x.sum()), FAST, n=3).passed

    def test_tolerance_semantics(self):
        cfg = CheckConfig(abs_tol=1e-9, rel_tol=1e-9)
        assert not cfg.violates(1e12, 1e12 + 100)
        assert cfg.violates(1.0, 1.0 + 1e-6)
