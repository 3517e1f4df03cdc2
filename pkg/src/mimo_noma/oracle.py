"""Brute-force checks that only evaluate rate formulas.

Nothing here touches the closed-form interval endpoints or the DoF-split
formula's optimality claim; grid searches and bisection recover both from
the rate expressions alone.
"""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from .beamforming import EffectiveCluster
from .power_allocation import DofMode, PaInterval
from .rates import (DofSplit, PowerSplit, noma_rates, noma_rates_vec, oma_rates,
                    oma_rates_vec, optimal_dof)

__all__ = [
    "MAX_BISECTION_ITER",
    "PARITY_TOL",
    "ParityUnachievableError",
    "BisectionError",
    "grid_max_oma_sum",
    "oma_reference",
    "bisect_parity",
    "scan_dominance",
]

MAX_BISECTION_ITER = 200
PARITY_TOL = 1e-12
_BRACKET_WIDTH = 4 * np.finfo(float).eps


class ParityUnachievableError(ValueError):
    """The NOMA-minus-OMA rate gap never changes sign on ``[0, 1]``."""


class BisectionError(RuntimeError):
    pass


def _grid(step: float) -> np.ndarray:
    n = int(round(1.0 / step))
    return np.linspace(0.0, 1.0, n + 1)


def grid_max_oma_sum(ec: EffectiveCluster, oma_ps: PowerSplit,
                     step: float = 1e-3) -> Tuple[DofSplit, float]:
    """Exhaustive search of the OMA sum rate over ``lam1`` on a uniform grid."""
    if not 0 < step <= 0.01:
        raise ValueError("step must lie in (0, 0.01]")
    lam1 = _grid(step)
    r1, r2 = oma_rates_vec(ec.gamma1, ec.gamma2, ec.rho, oma_ps.a2sq, lam1)
    total = r1 + r2
    best = int(np.argmax(total))
    return DofSplit.from_strong(lam1[best]), float(total[best])


def oma_reference(ec: EffectiveCluster, oma_ps: PowerSplit, dof_mode: DofMode):
    """OMA rates the NOMA users must match: optimal or equal DoF split."""
    if dof_mode is DofMode.OPTIMAL:
        df = optimal_dof(ec, oma_ps)
    else:
        df = DofSplit.equal()
    return oma_rates(ec, oma_ps, df)


def bisect_parity(ec: EffectiveCluster, oma_ps: PowerSplit, which_user: int,
                  dof_mode: DofMode) -> float:
    """Strong-user power fraction at which one user's NOMA and OMA rates coincide.

    The gap is increasing in ``a1sq`` for user 1 and decreasing for user 2.
    Bisection runs until the bracket is a few ulps of 1 wide, then the gap
    at the returned point is required to be below ``PARITY_TOL``.
    """
    if which_user not in (1, 2):
        raise ValueError("which_user must be 1 or 2")
    target = oma_reference(ec, oma_ps, dof_mode)

    def gap(a1sq):
        rp = noma_rates(ec, PowerSplit.from_strong(a1sq))
        if which_user == 1:
            return rp.r1 - target.r1
        return target.r2 - rp.r2  # oriented to increase with a1sq

    lo, hi = 0.0, 1.0
    g_lo, g_hi = gap(lo), gap(hi)
    if abs(g_lo) < PARITY_TOL:
        return lo
    if abs(g_hi) < PARITY_TOL:
        return hi
    if g_lo > 0 or g_hi < 0:
        raise ParityUnachievableError(
            f"user {which_user}: no sign change on [0, 1] (gap {g_lo:.3g} .. {g_hi:.3g})")
    for _ in range(MAX_BISECTION_ITER):
        mid = 0.5 * (lo + hi)
        if hi - lo <= _BRACKET_WIDTH or mid <= lo or mid >= hi:
            break
        g_mid = gap(mid)
        if g_mid == 0:
            return mid
        if g_mid < 0:
            lo = mid
        else:
            hi = mid
    else:
        raise BisectionError(f"no convergence after {MAX_BISECTION_ITER} iterations")
    best = lo if abs(gap(lo)) <= abs(gap(hi)) else hi
    if abs(gap(best)) >= PARITY_TOL:
        raise BisectionError(f"bracket collapsed with residual gap {gap(best):.3g}")
    return best


def scan_dominance(ec: EffectiveCluster, oma_ps: PowerSplit, dof_mode: DofMode,
                   grid_step: float = 1e-3, tol: float = PARITY_TOL) -> Optional[PaInterval]:
    """Smallest and largest grid values of ``a1sq`` where NOMA beats OMA for both users.

    Returns ``None`` when no grid point is feasible.
    """
    if not 0 < grid_step <= 1e-3:
        raise ValueError("grid_step must lie in (0, 1e-3]")
    target = oma_reference(ec, oma_ps, dof_mode)
    a1sq = _grid(grid_step)
    r1, r2 = noma_rates_vec(ec.gamma1, ec.gamma2, ec.rho, a1sq)
    ok = (r1 >= target.r1 - tol) & (r2 >= target.r2 - tol)
    if not ok.any():
        return None
    idx = np.flatnonzero(ok)
    return PaInterval(float(a1sq[idx[0]]), float(a1sq[idx[-1]]), dof_mode)
