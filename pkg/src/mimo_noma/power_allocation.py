"""NOMA power-allocation intervals that make both users at least as fast as OMA.

For a cluster with gains ``gamma1 >= gamma2 > 0`` and any OMA power split,
the strong-user fraction ``a1sq`` must lie in ``[lo, hi]``:

* ``lo`` is where the strong user's NOMA rate equals its OMA rate,
* ``hi`` is where the weak user's NOMA rate equals its OMA rate.

Two OMA references are supported: the sum-rate optimal DoF split
(:attr:`DofMode.OPTIMAL`) and the equal split (:attr:`DofMode.EQUAL`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .beamforming import EffectiveCluster
from .rates import PowerSplit

__all__ = [
    "INTERVAL_TOL",
    "DofMode",
    "PaPolicy",
    "PaInterval",
    "EmptyIntervalError",
    "WeakUserUnreachableError",
    "optimal_dof_bounds_vec",
    "equal_dof_bounds_vec",
    "lemma1_margin_vec",
    "pa_interval_optimal_dof",
    "pa_interval_equal_dof",
    "pa_interval",
    "lemma1_margin",
    "select_pa",
]

INTERVAL_TOL = 1e-12


class DofMode(enum.Enum):
    OPTIMAL = "optimal"
    EQUAL = "equal"


class PaPolicy(enum.Enum):
    """Which point of the feasible interval to use.

    ``STRONG_PARITY`` takes the lower end (strong user matches OMA, weak user
    gains), ``WEAK_PARITY`` the upper end, ``MIDPOINT`` the centre.
    """

    STRONG_PARITY = "strong-parity"
    WEAK_PARITY = "weak-parity"
    MIDPOINT = "midpoint"


class EmptyIntervalError(ValueError):
    pass


class WeakUserUnreachableError(ValueError):
    pass


@dataclass(frozen=True)
class PaInterval:
    lo: float
    hi: float
    kind: DofMode

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi + INTERVAL_TOL

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, a1sq: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= a1sq <= self.hi + tol


def optimal_dof_bounds_vec(gamma1, gamma2, rho, a2sq_oma):
    """``(lo, hi)`` against OMA with sum-rate optimal DoF (broadcasts).

    With the optimal split ``rho * a_k' * gamma_k / lam_k`` equals
    ``rho * S`` for both users, ``S = a1' gamma1 + a2' gamma2``, so the
    parity powers are ``(1 + rho S) ** lam_k``.  A zero DoF share gives a
    unit power and hence ``lo = 0`` in the limit.
    """
    gamma1 = np.asarray(gamma1, dtype=float)
    gamma2 = np.asarray(gamma2, dtype=float)
    a2 = np.asarray(a2sq_oma, dtype=float)
    w1 = (1.0 - a2) * gamma1
    w2 = a2 * gamma2
    total = w1 + w2
    lam1 = w1 / total
    lam2 = w2 / total
    log_sum = np.log1p(rho * total)
    lo = np.expm1(lam1 * log_sum) / (rho * gamma1)
    t2 = np.exp(lam2 * log_sum)
    # 1 + rho*gamma2 - t2, written to keep precision when t2 ~ 1
    num = rho * gamma2 - np.expm1(lam2 * log_sum)
    hi = num / (rho * gamma2 * t2)
    return lo, hi


def equal_dof_bounds_vec(gamma1, gamma2, rho, a2sq_oma):
    """``(lo, hi)`` against OMA with equal DoF (broadcasts)."""
    gamma1 = np.asarray(gamma1, dtype=float)
    gamma2 = np.asarray(gamma2, dtype=float)
    a2 = np.asarray(a2sq_oma, dtype=float)
    a1 = 1.0 - a2
    # (sqrt(1 + 2x) - 1) / y rewritten without cancellation
    lo = 2.0 * a1 / (np.sqrt(1.0 + 2.0 * rho * a1 * gamma1) + 1.0)
    s = np.sqrt(1.0 + 2.0 * rho * a2 * gamma2)
    num = rho * gamma2 - 2.0 * rho * a2 * gamma2 / (s + 1.0)
    hi = num / (rho * gamma2 * s)
    return lo, hi


def lemma1_margin_vec(gamma1, gamma2, rho, a2sq_oma):
    """Gap between the linear and convex parts of the feasibility condition."""
    gamma1 = np.asarray(gamma1, dtype=float)
    gamma2 = np.asarray(gamma2, dtype=float)
    a2 = np.asarray(a2sq_oma, dtype=float)
    x1 = rho * (1.0 - a2) * gamma1
    x2 = rho * a2 * gamma2
    total = x1 + x2
    with np.errstate(invalid="ignore", divide="ignore"):
        share2 = np.where(total > 0, x2 / np.where(total > 0, total, 1.0), 0.0)
    # (1 + x2) - (1 + x1 + x2) ** share2, factored for accuracy near the roots
    return -(1.0 + x2) * np.expm1(share2 * np.log1p(total) - np.log1p(x2))


def _check_cluster(ec: EffectiveCluster):
    if ec.gamma1 < ec.gamma2:
        raise ValueError("strong user must have the larger effective gain")
    if not ec.gamma2 > 0:
        raise WeakUserUnreachableError("weak user unreachable: gamma2 = 0")


def _clip(x):
    return float(min(1.0, max(0.0, x)))


def pa_interval_optimal_dof(ec: EffectiveCluster, oma_ps: PowerSplit) -> PaInterval:
    """Feasible strong-user power against OMA with sum-rate optimal DoF."""
    _check_cluster(ec)
    lo, hi = optimal_dof_bounds_vec(ec.gamma1, ec.gamma2, ec.rho, oma_ps.a2sq)
    return PaInterval(_clip(lo), _clip(hi), DofMode.OPTIMAL)


def pa_interval_equal_dof(ec: EffectiveCluster, oma_ps: PowerSplit) -> PaInterval:
    """Feasible strong-user power against OMA with equal DoF."""
    _check_cluster(ec)
    lo, hi = equal_dof_bounds_vec(ec.gamma1, ec.gamma2, ec.rho, oma_ps.a2sq)
    return PaInterval(_clip(lo), _clip(hi), DofMode.EQUAL)


def pa_interval(ec: EffectiveCluster, oma_ps: PowerSplit, mode: DofMode) -> PaInterval:
    if mode is DofMode.OPTIMAL:
        return pa_interval_optimal_dof(ec, oma_ps)
    return pa_interval_equal_dof(ec, oma_ps)


def lemma1_margin(ec: EffectiveCluster, oma_ps: PowerSplit) -> float:
    if ec.gamma1 < ec.gamma2:
        raise ValueError("strong user must have the larger effective gain")
    return float(lemma1_margin_vec(ec.gamma1, ec.gamma2, ec.rho, oma_ps.a2sq))


def select_pa(iv: PaInterval, policy: PaPolicy) -> PowerSplit:
    if iv.is_empty:
        raise EmptyIntervalError(f"empty power interval [{iv.lo}, {iv.hi}]")
    if policy is PaPolicy.STRONG_PARITY:
        a1sq = iv.lo
    elif policy is PaPolicy.WEAK_PARITY:
        a1sq = iv.hi
    else:
        a1sq = 0.5 * (iv.lo + iv.hi)
    return PowerSplit.from_strong(min(1.0, max(0.0, a1sq)))
