import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from closedloop.analytic import (
    analytic_moments,
    denominator_factors,
    tmss_only_moments,
    tmss_only_steering_conditions,
)
from closedloop.errors import ContractError, StabilityError
from closedloop.lyapunov import steady_state
from closedloop.measures import correlation_report, moments_from_cm, reduce_pair
from closedloop.model import SystemParams, check_stability
from closedloop.selftest import random_stable_params

from conftest import fig2_params


def numeric_moments(p):
    return moments_from_cm(reduce_pair(steady_state(p)))


def assert_moments_close(ref, num, rel=1e-8):
    # covariance entries carry absolute rounding near 1e-16, hence the small floor
    floor = 1e-13
    assert num.n_first == pytest.approx(ref.n_a, rel=rel, abs=floor)
    assert num.n_second == pytest.approx(ref.n_b, rel=rel, abs=floor)
    assert num.abs_corr == pytest.approx(abs(ref.corr), rel=rel, abs=floor)
    assert abs(num.corr - ref.corr) <= rel * abs(ref.corr) + floor
    if abs(ref.corr) > 1e-6:
        assert abs(cmath.phase(num.corr / ref.corr)) <= rel


class TestClosedForms:
    def test_direct_path_worked_example(self):
        p = SystemParams(1.0, 1.0, 2.0, lam=0.5, phi=0.5 * math.pi)
        m = analytic_moments(p)
        assert m.n_a == pytest.approx(1 / 6, rel=1e-14)
        assert m.n_b == pytest.approx(1 / 6, rel=1e-14)
        assert abs(m.corr) == pytest.approx(1 / 3, rel=1e-14)

    def test_indirect_only(self):
        p = SystemParams(1.0, 1.0, 2.0, lam=0.0, phi=0.5 * math.pi, g_a=3.2, g_b=5.0)
        assert_moments_close(analytic_moments(p), numeric_moments(p))

    @pytest.mark.parametrize("phi", [0.5 * math.pi, 1.5 * math.pi])
    def test_fig2a_quarter_phases(self, phi):
        p = fig2_params(phi=phi)
        assert_moments_close(analytic_moments(p), numeric_moments(p))

    def test_corr_is_real(self, fig2a):
        assert analytic_moments(fig2a).corr.imag == 0.0

    def test_thermal_mode_c(self):
        p = fig2_params(nbar_c=1.3)
        assert_moments_close(analytic_moments(p), numeric_moments(p))

    def test_denominator_is_product_of_factors(self, fig2a):
        f1, f2 = denominator_factors(fig2a)
        assert f1 < 0 and f2 < 0
        assert analytic_moments(fig2a).de == pytest.approx(f1 * f2, rel=1e-14)

    def test_oracle_agreement_1000_draws(self):
        rng = np.random.default_rng(31)
        for _ in range(1000):
            p = random_stable_params(rng, quarter_phase=True)
            assert_moments_close(analytic_moments(p), numeric_moments(p))

    @given(st.floats(0.1, 5.0), st.floats(0.1, 5.0), st.floats(0.0, 3.0),
           st.sampled_from([0.5 * math.pi, 1.5 * math.pi]))
    def test_reduces_to_direct_path_formulas(self, ka, kb, lam, phi):
        assume(lam * lam < ka * kb * (1 - 1e-6))
        p = SystemParams(ka, kb, 1.0, lam=lam, phi=phi)
        full, short = analytic_moments(p), tmss_only_moments(p)
        assert full.n_a == pytest.approx(short.n_a, rel=1e-10, abs=1e-300)
        assert full.n_b == pytest.approx(short.n_b, rel=1e-10, abs=1e-300)
        assert abs(full.corr - short.corr) <= 1e-10 * max(abs(short.corr), 1e-300)


class TestDirectPath:
    @given(st.floats(0.1, 5.0), st.floats(0.1, 5.0), st.floats(0.0, 3.0),
           st.floats(0.0, 2 * math.pi))
    def test_matches_numeric_at_any_phase(self, ka, kb, lam, phi):
        assume(lam * lam < ka * kb * (1 - 1e-3))
        p = SystemParams(ka, kb, 1.0, lam=lam, phi=phi)
        assert_moments_close(tmss_only_moments(p), numeric_moments(p), rel=1e-8)

    def test_corr_modulus_phase_free(self):
        mods = {round(abs(tmss_only_moments(SystemParams(1, 1, 1, lam=0.5, phi=phi)).corr), 14)
                for phi in np.linspace(0, 2 * math.pi, 9)}
        assert mods == {round(1 / 3, 14)}

    @pytest.mark.parametrize("ka, kb, expected", [
        (1.0, 2.0, (True, False)),
        (1.0, 1.0, (False, False)),
        (2.0, 1.0, (False, True)),
    ])
    def test_steering_conditions(self, ka, kb, expected):
        assert tmss_only_steering_conditions(SystemParams(ka, kb, 1.0, lam=0.5)) == expected

    def test_steering_conditions_match_measures(self):
        checked = 0
        for ratio in np.linspace(0.25, 4.0, 10):
            for frac in np.linspace(0.05, 0.95, 10):
                ka, kb = 1.0, float(ratio)
                lam = frac * math.sqrt(ka * kb)
                p = SystemParams(ka, kb, 1.0, lam=lam, phi=0.3)
                fwd, bwd = tmss_only_steering_conditions(p)
                rep = correlation_report(steady_state(p))
                assert (rep.g_fwd > 1e-12) == fwd
                assert (rep.g_bwd > 1e-12) == bwd
                checked += 1
        assert checked == 100


class TestContracts:
    def test_off_quarter_phase(self):
        with pytest.raises(ContractError):
            analytic_moments(fig2_params(phi=1.0))

    def test_thermal_a_rejected(self):
        with pytest.raises(ContractError):
            analytic_moments(fig2_params(nbar_a=0.1))

    def test_unstable(self):
        p = SystemParams(1.0, 1.0, 2.0, lam=1.2, phi=0.5 * math.pi)
        assert not check_stability(p).stable
        with pytest.raises(StabilityError):
            analytic_moments(p)

    def test_direct_path_needs_zero_indirect_coupling(self, fig2a):
        with pytest.raises(ContractError):
            tmss_only_moments(fig2a)
        with pytest.raises(ContractError):
            tmss_only_steering_conditions(fig2a)

    def test_direct_path_unstable(self):
        with pytest.raises(StabilityError):
            tmss_only_steering_conditions(SystemParams(1.0, 1.0, 1.0, lam=1.0))
