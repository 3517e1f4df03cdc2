import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mimo_noma.beamforming import EffectiveCluster
from mimo_noma.rates import (DegenerateClusterError, DofSplit, PowerSplit, RatePair,
                             jain_index, noma_rates, noma_rates_vec, oma_rates, oma_rates_vec,
                             oma_sum_bound, optimal_dof, optimal_lambda1_vec)

from strategies import clusters, power_splits


class TestSplits:

    def test_power_split_sum(self):
        with pytest.raises(ValueError):
            PowerSplit(0.5, 0.6)
        with pytest.raises(ValueError):
            PowerSplit(-0.1, 1.1)
        assert PowerSplit.from_weak(0.3).a1sq == pytest.approx(0.7)

    def test_dof_split(self):
        assert DofSplit.equal() == DofSplit(0.5, 0.5)
        with pytest.raises(ValueError):
            DofSplit(0.2, 0.2)

    def test_rate_pair(self):
        with pytest.raises(ValueError):
            RatePair(-1.0, 0.0)
        with pytest.raises(ValueError):
            RatePair(float("inf"), 0.0)
        assert RatePair(1.0, 2.0).total == 3.0


class TestNomaRates:

    def test_counter_example_weak_rate(self):
        # rho*a1sq*gamma2 = 0.125, rho*a2sq*gamma2 = 0.25 -> log2(1 + 0.25/1.125) = log2(11/9)
        ec = EffectiveCluster(0.75, 0.375, 1.0)
        rp = noma_rates(ec, PowerSplit(1 / 3, 2 / 3))
        assert rp.r2 == pytest.approx(0.28950661719498489, abs=1e-14)
        assert round(2 ** rp.r2, 2) == 1.22

    def test_full_power_to_strong(self, fig1_cluster):
        assert noma_rates(fig1_cluster, PowerSplit(1.0, 0.0)).r2 == 0.0

    def test_strong_rate(self, fig1_cluster):
        # 1 + 1000 * 0.052 * 0.25 = 14
        rp = noma_rates(fig1_cluster, PowerSplit(0.25, 0.75))
        assert rp.r1 == pytest.approx(3.8073549220576041, abs=1e-14)

    def test_vector_matches_scalar(self, fig1_cluster):
        a = np.linspace(0, 1, 11)
        r1, r2 = noma_rates_vec(0.052, 0.0052, 1000.0, a)
        for i, x in enumerate(a):
            rp = noma_rates(fig1_cluster, PowerSplit.from_strong(x))
            assert (r1[i], r2[i]) == pytest.approx((rp.r1, rp.r2), abs=1e-15)

    @given(clusters(), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_monotone_in_power(self, ec, a, b):
        lo, hi = sorted((a, b))
        if hi - lo < 1e-9:
            return
        r_lo = noma_rates(ec, PowerSplit.from_strong(lo))
        r_hi = noma_rates(ec, PowerSplit.from_strong(hi))
        assert r_hi.r1 > r_lo.r1
        assert r_hi.r2 < r_lo.r2


class TestOmaRates:

    def test_paper_instance(self):
        # lam2 = 0.5 and rho * a2' * gamma2 = 0.25 -> 0.5 * log2(1.5)
        ec = EffectiveCluster(0.25, 0.25, 1.0)
        rp = oma_rates(ec, PowerSplit(0.0, 1.0), DofSplit(0.5, 0.5))
        assert rp.r2 == pytest.approx(0.29248125036057809, abs=1e-14)
        # printed as log2(1.23) in the source; 2 ** r2 = sqrt(1.5) = 1.2247
        assert abs(2 ** rp.r2 - 1.23) < 0.01

    def test_single_user_limit(self, fig1_cluster):
        rp = oma_rates(fig1_cluster, PowerSplit(1.0, 0.0), DofSplit(1.0, 0.0))
        assert rp.r1 == pytest.approx(math.log2(1 + 52.0))
        assert rp.r2 == 0.0

    def test_zero_dof_is_zero_rate(self, fig1_cluster):
        rp = oma_rates(fig1_cluster, PowerSplit(0.5, 0.5), DofSplit(0.0, 1.0))
        assert rp.r1 == 0.0
        r1, _ = oma_rates_vec(0.052, 0.0052, 1000.0, 0.5, np.array([0.0, 1e-300]))
        assert r1[0] == 0.0 and 0.0 <= r1[1] < 1e-290

    @settings(max_examples=300)
    @given(clusters(), power_splits)
    def test_optimal_dof_attains_bound(self, ec, ps):
        rp = oma_rates(ec, ps, optimal_dof(ec, ps))
        assert rp.r1 + rp.r2 == pytest.approx(oma_sum_bound(ec, ps), abs=1e-12)

    @given(clusters(), power_splits, st.floats(0.0, 1.0))
    def test_any_dof_below_bound(self, ec, ps, lam1):
        rp = oma_rates(ec, ps, DofSplit.from_strong(lam1))
        assert rp.r1 + rp.r2 <= oma_sum_bound(ec, ps) + 1e-12

    @given(clusters(), power_splits)
    def test_noma_sum_beats_oma_with_same_power(self, ec, ps):
        noma = noma_rates(ec, ps)
        assert noma.r1 + noma.r2 >= oma_sum_bound(ec, ps) - 1e-12

    def test_dense_grid_peak_at_optimal_share(self, fig1_cluster):
        ps = PowerSplit(0.5, 0.5)
        lam = np.linspace(0, 1, 1001)
        r1, r2 = oma_rates_vec(0.052, 0.0052, 1000.0, 0.5, lam)
        total = r1 + r2
        assert total.max() <= oma_sum_bound(fig1_cluster, ps) + 1e-12
        assert abs(lam[np.argmax(total)] - optimal_dof(fig1_cluster, ps).lam1) <= 1e-3


class TestOptimalDof:

    def test_symmetric(self):
        df = optimal_dof(EffectiveCluster(0.2, 0.1, 3.0), PowerSplit(1 / 3, 2 / 3))
        assert df.lam1 == pytest.approx(0.5) and df.lam2 == pytest.approx(0.5)

    def test_all_power_to_strong(self, fig1_cluster):
        assert optimal_dof(fig1_cluster, PowerSplit(1.0, 0.0)).lam1 == 1.0

    def test_fig1_gains(self, fig1_cluster):
        # 0.5 * 0.0052 / (0.5 * 0.052 + 0.5 * 0.0052) = 0.0026 / 0.0286
        df = optimal_dof(fig1_cluster, PowerSplit(0.5, 0.5))
        assert df.lam2 == pytest.approx(0.09090909090909091, abs=1e-15)

    def test_degenerate(self):
        with pytest.raises(DegenerateClusterError, match="degenerate cluster"):
            optimal_dof(EffectiveCluster(0.1, 0.0, 1.0), PowerSplit(0.0, 1.0))
        assert np.isnan(optimal_lambda1_vec(0.1, 0.0, 1.0))


class TestSumBound:

    def test_paper_instance(self):
        ec = EffectiveCluster(0.5, 0.5, 1.0)
        assert oma_sum_bound(ec, PowerSplit(0.5, 0.5)) == pytest.approx(math.log2(1.5))

    def test_zero_gains(self):
        assert oma_sum_bound(EffectiveCluster(0.0, 0.0, 10.0), PowerSplit(0.5, 0.5)) == 0.0


class TestJain:

    @pytest.mark.parametrize("r1, r2, expected", [
        (2.0, 2.0, 1.0),
        (1.5, 0.0, 0.5),
        (3.0, 1.0, 0.8),
    ])
    def test_values(self, r1, r2, expected):
        assert jain_index(RatePair(r1, r2)) == pytest.approx(expected)

    def test_zero_total(self):
        with pytest.raises(ValueError):
            jain_index(RatePair(0.0, 0.0))

    @given(st.floats(0, 10), st.floats(0, 10))
    def test_range(self, r1, r2):
        if r1 + r2 <= 1e-150:
            return
        j = jain_index(RatePair(r1, r2))
        assert 0.5 - 1e-12 <= j <= 1.0 + 1e-12
