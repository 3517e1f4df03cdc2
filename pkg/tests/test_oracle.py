import numpy as np
import pytest
from hypothesis import given, settings

from mimo_noma import oracle
from mimo_noma.beamforming import EffectiveCluster
from mimo_noma.oracle import (ParityUnachievableError, bisect_parity, grid_max_oma_sum,
                              oma_reference, scan_dominance)
from mimo_noma.power_allocation import DofMode, pa_interval
from mimo_noma.rates import PowerSplit, RatePair, oma_sum_bound

from strategies import clusters, power_splits


class TestBisection:

    def test_equal_dof_strong_parity(self, fig1_cluster, half_split):
        a = bisect_parity(fig1_cluster, half_split, 1, DofMode.EQUAL)
        assert a == pytest.approx(0.12077134402462535, abs=1e-12)

    def test_equal_dof_weak_parity(self, fig1_cluster, half_split):
        a = bisect_parity(fig1_cluster, half_split, 2, DofMode.EQUAL)
        assert a == pytest.approx(0.28653459992264355, abs=1e-12)

    def test_weak_user_gets_all_oma_power(self, fig1_cluster):
        # optimal DoF gives the whole resource to user 2, NOMA must do the same
        a = bisect_parity(fig1_cluster, PowerSplit(0.0, 1.0), 2, DofMode.OPTIMAL)
        assert a == pytest.approx(0.0, abs=1e-12)

    def test_rejects_bad_user(self, fig1_cluster, half_split):
        with pytest.raises(ValueError):
            bisect_parity(fig1_cluster, half_split, 3, DofMode.EQUAL)

    def test_gap_already_closed_at_zero(self):
        # OMA with all power on user 2 gives user 1 nothing, so a1sq = 0 is parity
        ec = EffectiveCluster(0.0052, 0.0052, 1000.0)
        assert bisect_parity(ec, PowerSplit(0.0, 1.0), 1, DofMode.EQUAL) == 0.0

    def test_unachievable(self, monkeypatch):
        monkeypatch.setattr(oracle, "oma_reference", lambda *a: RatePair(0.0, 100.0))
        with pytest.raises(ParityUnachievableError):
            bisect_parity(EffectiveCluster(1.0, 0.5, 1.0), PowerSplit(0.5, 0.5), 2,
                          DofMode.EQUAL)

    @settings(max_examples=100, deadline=None)
    @given(clusters(), power_splits)
    def test_agrees_with_closed_form(self, ec, ps):
        for mode in DofMode:
            iv = pa_interval(ec, ps, mode)
            assert bisect_parity(ec, ps, 1, mode) == pytest.approx(iv.lo, abs=1e-9)
            assert bisect_parity(ec, ps, 2, mode) == pytest.approx(iv.hi, abs=1e-9)


class TestGridMax:

    def test_symmetric_cluster(self):
        ec = EffectiveCluster(0.01, 0.01, 100.0)
        df, best = grid_max_oma_sum(ec, PowerSplit(0.5, 0.5))
        assert df.lam1 == pytest.approx(0.5, abs=1e-3)
        assert best == pytest.approx(oma_sum_bound(ec, PowerSplit(0.5, 0.5)), abs=1e-9)

    def test_step_bounds(self, fig1_cluster, half_split):
        with pytest.raises(ValueError):
            grid_max_oma_sum(fig1_cluster, half_split, step=0.1)
        with pytest.raises(ValueError):
            grid_max_oma_sum(fig1_cluster, half_split, step=0.0)

    @settings(max_examples=100, deadline=None)
    @given(clusters(), power_splits)
    def test_never_exceeds_bound(self, ec, ps):
        _, best = grid_max_oma_sum(ec, ps)
        assert best <= oma_sum_bound(ec, ps) + 1e-12


class TestScan:

    def test_fig1_equal_dof(self, fig1_cluster, half_split):
        iv = scan_dominance(fig1_cluster, half_split, DofMode.EQUAL)
        step = 1e-3
        assert iv.lo <= 0.12077134402462535 + step
        assert iv.lo >= 0.12077134402462535 - 1e-12
        assert iv.hi >= 0.28653459992264355 - step
        assert iv.hi <= 0.28653459992264355 + 1e-12

    def test_equal_gains_all_power_strong(self):
        ec = EffectiveCluster(0.01, 0.01, 100.0)
        iv = scan_dominance(ec, PowerSplit(1.0, 0.0), DofMode.OPTIMAL)
        assert iv.lo == pytest.approx(1.0)
        assert iv.hi == pytest.approx(1.0)

    def test_empty(self, monkeypatch):
        monkeypatch.setattr(oracle, "oma_reference", lambda *a: RatePair(100.0, 100.0))
        ec = EffectiveCluster(1.0, 0.5, 1.0)
        assert scan_dominance(ec, PowerSplit(0.5, 0.5), DofMode.EQUAL) is None

    @settings(max_examples=100, deadline=None)
    @given(clusters(), power_splits)
    def test_inside_closed_form(self, ec, ps):
        for mode in DofMode:
            iv = pa_interval(ec, ps, mode)
            scan = scan_dominance(ec, ps, mode)
            if scan is None:
                assert iv.width < 1e-3
                continue
            assert scan.lo >= iv.lo - 1e-9
            assert scan.hi <= iv.hi + 1e-9


def test_oma_reference_modes(fig1_cluster, half_split):
    eq = oma_reference(fig1_cluster, half_split, DofMode.EQUAL)
    opt = oma_reference(fig1_cluster, half_split, DofMode.OPTIMAL)
    assert eq.r1 == pytest.approx(0.5 * np.log2(53.0))
    assert opt.total >= eq.total
