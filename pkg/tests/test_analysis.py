import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chainent.analysis import (
    NO,
    UNDECIDABLE,
    YES,
    EntropyCurve,
    SpectrumDistribution,
    anisotropy_shift,
    block_majorization_scan,
    central_charge,
    chi_bound_holds,
    entropy_property_suite,
    fit_log_scaling,
    ghz_curve,
    majorization_entropy_trial,
    majorizes,
    majorizes_adaptive,
    mass_entropy_difference,
    rg_majorization_check,
    saturation,
    shannon_bits,
    ScalingFit,
)
from chainent.errors import DomainError, InsufficientDataError
from chainent.xy_core import (
    ModeSpectrum,
    XYParams,
    build_correlation_matrix,
    correlation_kernel,
    mode_spectrum,
    rho_full_spectrum,
    xy_entropy_curve,
)


def modes_at(g, lam, L):
    return mode_spectrum(build_correlation_matrix(correlation_kernel(XYParams(g, lam), L), L))


def exact_prefix_order(x, y, tol=1e-12):
    """Reference x ≺ y on complete lists, padded to equal length."""
    n = max(len(x), len(y))
    cx = np.cumsum(np.pad(np.sort(x)[::-1], (0, n - len(x))))
    cy = np.cumsum(np.pad(np.sort(y)[::-1], (0, n - len(y))))
    return bool(np.all(cx <= cy + tol))


def t_transform(p, rng, steps=3):
    p = np.array(p, dtype=float)
    for _ in range(steps):
        a, b = rng.choice(p.size, 2, replace=False)
        t = rng.uniform()
        p[a], p[b] = t * p[a] + (1 - t) * p[b], (1 - t) * p[a] + t * p[b]
    return p


distributions = st.lists(st.floats(0.01, 1.0), min_size=2, max_size=8).map(lambda v: np.array(v) / np.sum(v))


class TestCurve:
    def test_validation(self):
        with pytest.raises(ValueError):
            EntropyCurve([1, 1], [0.0, 0.0])
        with pytest.raises(ValueError):
            EntropyCurve([1, 2], [0.0, -1.0])
        with pytest.raises(KeyError):
            EntropyCurve([1, 2], [0.0, 1.0]).at(3)


class TestFit:
    def test_synthetic_exact(self):
        L = np.arange(20, 201)
        f = fit_log_scaling(EntropyCurve(L, np.log2(L) / 3 + 1))
        np.testing.assert_allclose([f.k, f.a], [1 / 3, 1.0], atol=1e-12)
        assert f.stderr_k < 1e-12
        assert f.n_points == L.size

    @given(st.floats(0, 2), st.floats(0, 5))
    def test_recovers_any_line(self, k, a):
        L = np.arange(4, 60)
        f = fit_log_scaling(EntropyCurve(L, k * np.log2(L) + a), L_min=4)
        np.testing.assert_allclose([f.k, f.a], [k, a], atol=1e-10)

    def test_window(self):
        L = np.arange(1, 100)
        S = np.where(L < 20, 0.0, np.log2(L) / 6)
        assert fit_log_scaling(EntropyCurve(L, S), L_min=20).k == pytest.approx(1 / 6, abs=1e-12)

    def test_insufficient(self):
        with pytest.raises(InsufficientDataError):
            fit_log_scaling(EntropyCurve([20, 21, 22], [1, 1, 1]))

    @pytest.mark.parametrize("k,c", [(1 / 3, 1.0), (1 / 6, 0.5), (0.0, 0.0)])
    def test_central_charge(self, k, c):
        assert central_charge(ScalingFit(k, 0, 0, 0, 4)) == pytest.approx(c)


class TestSaturation:
    def test_constant(self):
        r = saturation(EntropyCurve(np.arange(1, 65), np.full(64, 0.7)))
        assert r.saturated and r.S_star == pytest.approx(0.7) and r.L_sat == 1

    def test_log_curve_not_saturated(self):
        L = np.arange(1, 257)
        r = saturation(EntropyCurve(L, np.log2(L) / 6))
        assert not r.saturated and r.S_star is None and r.inconclusive

    def test_critical_and_massive_ising(self):
        crit = EntropyCurve.from_points([(L, S) for L, S, _ in xy_entropy_curve(XYParams(1, 1), 200)])
        assert not saturation(crit).saturated
        mass = EntropyCurve.from_points([(L, S) for L, S, _ in xy_entropy_curve(XYParams(1, 1.1), 200)])
        r = saturation(mass)
        assert r.saturated
        assert mass.at(200) - mass.at(100) < 1e-3

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            saturation(EntropyCurve([1, 2], [0, 0]), tol=0)


class TestMass:
    def test_equal_masses(self):
        m, p = mass_entropy_difference(1.2, 0.1, 1.2, 0.1)
        assert m == 0 and p == 0

    def test_units_and_sign(self):
        m, p = mass_entropy_difference(1.0, 0.04, 2.0, 0.02)
        assert m == pytest.approx(-math.log(2))
        assert p == pytest.approx(-math.log(2) / 6)
        assert m < 0

    def test_domain(self):
        with pytest.raises(DomainError):
            mass_entropy_difference(1, 0, 1, 0.1)


class TestAnisotropy:
    def test_reference_is_zero(self):
        c = EntropyCurve([1, 2], [1.0, 1.2])
        out = anisotropy_shift({1.0: c, 0.5: EntropyCurve([1, 2], [0.8, 1.0])})
        assert out[1.0] == (0.0, 0.0)
        assert out[0.5][0] == pytest.approx(0.2)
        assert out[0.5][1] == pytest.approx(1 / 6)

    def test_needs_reference(self):
        with pytest.raises(ValueError):
            anisotropy_shift({0.5: EntropyCurve([1], [0.0])})


class TestMajorizes:
    def test_examples(self):
        assert majorizes([0.5, 0.5], [1.0, 0.0]) == YES
        assert majorizes([1.0, 0.0], [0.5, 0.5]) == NO
        x = [0.6, 0.3, 0.1]
        assert majorizes(x, x) == YES

    def test_truncated_undecidable(self):
        x = SpectrumDistribution([0.3, 0.3], support_size=1 << 10)
        y = SpectrumDistribution([0.5, 0.3], support_size=1 << 10)
        assert majorizes(x, y) == UNDECIDABLE

    def test_truncated_decidable(self):
        # 0.4 left for 1022 outcomes below 0.3 cannot beat y once y is complete
        x = SpectrumDistribution([0.3, 0.3], support_size=1 << 10)
        y = SpectrumDistribution.exact([0.9, 0.1])
        assert majorizes(x, y) == YES

    def test_validation(self):
        with pytest.raises(ValueError):
            SpectrumDistribution([0.2, 0.5])
        with pytest.raises(ValueError):
            SpectrumDistribution([0.8, 0.7])

    @settings(max_examples=300, deadline=None)
    @given(distributions, distributions)
    def test_matches_reference_on_exact(self, x, y):
        v = majorizes(SpectrumDistribution.exact(x), SpectrumDistribution.exact(y))
        assert v != UNDECIDABLE
        assert (v == YES) == exact_prefix_order(x, y)

    @settings(max_examples=300, deadline=None)
    @given(distributions, distributions, st.integers(1, 8), st.integers(1, 8))
    def test_truncation_is_sound(self, x, y, kx, ky):
        # a decided verdict on truncated lists must agree with the full lists
        xs, ys = np.sort(x)[::-1], np.sort(y)[::-1]
        tx = SpectrumDistribution(xs[:kx], xs.size)
        ty = SpectrumDistribution(ys[:ky], ys.size)
        v = majorizes(tx, ty)
        if v != UNDECIDABLE:
            assert (v == YES) == exact_prefix_order(x, y)

    @given(distributions)
    def test_reflexive(self, x):
        assert majorizes(x, x) == YES

    @given(distributions, st.integers(0, 2**32 - 1))
    def test_transitive(self, z, seed):
        # build a chain x ≺ y ≺ z from random T-transforms
        rng = np.random.default_rng(seed)
        y = t_transform(z, rng)
        x = t_transform(y, rng)
        assert majorizes(y, z) == YES and majorizes(x, y) == YES
        assert majorizes(x, z) == YES

    @given(distributions, distributions)
    def test_antisymmetric(self, x, y):
        if majorizes(x, y) == YES and majorizes(y, x) == YES:
            np.testing.assert_allclose(np.sort(x), np.sort(y), atol=1e-10)

    @settings(max_examples=200, deadline=None)
    @given(distributions, distributions)
    def test_majorization_orders_entropy(self, x, y):
        if majorizes(x, y) == YES:
            assert shannon_bits(x) >= shannon_bits(y) - 1e-12

    def test_trial(self):
        out = majorization_entropy_trial(1000, 8, seed=1)
        assert out["pairs"] == 1000
        assert out["majorized"] > 400
        assert out["entropy_violations"] == 0
        assert out["verdict_mismatches"] == 0


class TestBlockMajorization:
    def test_ferromagnetic_product(self):
        from chainent.xy_core import CorrelationKernel, compute_g_analytic

        p = XYParams(0.5, 0.0)
        k = CorrelationKernel.from_mapping({l: compute_g_analytic(p, l, "ferromagnetic-limit") for l in range(-12, 13)})
        mods = {L: mode_spectrum(build_correlation_matrix(k, L)) for L in (4, 6, 8)}
        for L in (4, 6):
            v, v0, _ = majorizes_adaptive(mods[L + 2], mods[L])
            assert v == YES and v0 == YES

    def test_scan_small_blocks_exact(self):
        # for L <= 6 both spectra fit within K = 64, so the first verdict is already exact
        scan = block_majorization_scan(XYParams(1, 1), [2, 4], K=64)
        for s in scan:
            assert s.verdict == YES == s.verdict_at_K and s.K_used == 64

    def test_scan_matches_full_enumeration(self):
        p = XYParams(0, 0)
        scan = block_majorization_scan(p, [6, 8], K=64, one_step=False)
        for s in scan:
            full_x = rho_full_spectrum(modes_at(0, 0, s.L + 2))
            full_y = rho_full_spectrum(modes_at(0, 0, s.L))
            assert (s.verdict == YES) == exact_prefix_order(full_x, full_y)

    def test_verdict_stable_under_deeper_K(self):
        a, b = modes_at(1, 1, 12), modes_at(1, 1, 10)
        verdicts = {majorizes_adaptive(a, b, K=K, K_max=1 << 14)[0] for K in (256, 1024, 4096)}
        assert verdicts == {YES}

    def test_rg_identical_and_reversed(self):
        crit, mass = modes_at(1, 1, 16), modes_at(1, 1.2, 16)
        assert rg_majorization_check(crit, crit)[0] == YES
        assert rg_majorization_check(crit, mass)[0] == YES
        assert rg_majorization_check(mass, crit)[0] == NO


class TestProperties:
    def test_ghz(self):
        rep = entropy_property_suite(ghz_curve(26), N=26)
        assert rep.passed
        assert set(rep.checks) == {"monotone", "concave", "bound", "reflection"}

    def test_non_concave(self):
        rep = entropy_property_suite(EntropyCurve([1, 2, 3, 4], [0.1, 0.2, 0.9, 1.0]))
        assert not rep.passed and "concave" in rep.failures()

    def test_bound_violation(self):
        rep = entropy_property_suite(EntropyCurve([1, 2], [1.5, 1.6]))
        assert "bound" in rep.failures()

    def test_decreasing_curve(self):
        rep = entropy_property_suite(EntropyCurve([1, 2, 3], [0.9, 0.8, 0.7]))
        assert "monotone" in rep.failures()

    def test_xy_curve_with_modes(self):
        pts = xy_entropy_curve(XYParams(0.5, 0.7), 40)
        rep = entropy_property_suite(EntropyCurve.from_points([(L, S) for L, S, _ in pts]),
                                     modes=[m for _, _, m in pts])
        assert rep.passed, rep.checks

    def test_chi_bound_pure_block(self):
        ok, margin = chi_bound_holds(ModeSpectrum([1.0, 1.0]))
        assert ok and margin == 0.0
