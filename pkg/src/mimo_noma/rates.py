"""Achievable rates of the two-user cluster under NOMA and OMA.

All rates are in bits/s/Hz.  NOMA uses power split ``(a1sq, a2sq)`` with SIC
at the strong user; OMA uses its own power split ``(a1sq', a2sq')`` and a
degrees-of-freedom split ``(lam1, lam2)``.

The ``*_vec`` functions are broadcasting numpy kernels used by sweeps and
Monte-Carlo runs; the dataclass-level functions wrap them for single
instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .beamforming import EffectiveCluster

__all__ = [
    "SIMPLEX_TOL",
    "DegenerateClusterError",
    "PowerSplit",
    "DofSplit",
    "RatePair",
    "log2_1p",
    "noma_rates_vec",
    "oma_rates_vec",
    "optimal_lambda1_vec",
    "noma_rates",
    "oma_rates",
    "optimal_dof",
    "oma_sum_bound",
    "jain_index",
]

SIMPLEX_TOL = 1e-12
_LN2 = math.log(2.0)


class DegenerateClusterError(ValueError):
    """Both OMA-weighted gains vanish, so the DoF split is undefined."""


def _check_simplex(name, x1, x2):
    if not (-SIMPLEX_TOL <= x1 <= 1 + SIMPLEX_TOL and -SIMPLEX_TOL <= x2 <= 1 + SIMPLEX_TOL):
        raise ValueError(f"{name} components must lie in [0, 1], got ({x1}, {x2})")
    if abs(x1 + x2 - 1.0) > SIMPLEX_TOL:
        raise ValueError(f"{name} components must sum to 1, got {x1 + x2!r}")


@dataclass(frozen=True)
class PowerSplit:
    """Fractions of cluster power given to the strong (1) and weak (2) user."""

    a1sq: float
    a2sq: float

    def __post_init__(self):
        _check_simplex("PowerSplit", self.a1sq, self.a2sq)

    @classmethod
    def from_strong(cls, a1sq: float) -> "PowerSplit":
        a1sq = float(a1sq)
        return cls(a1sq, 1.0 - a1sq)

    @classmethod
    def from_weak(cls, a2sq: float) -> "PowerSplit":
        a2sq = float(a2sq)
        return cls(1.0 - a2sq, a2sq)


@dataclass(frozen=True)
class DofSplit:
    """Fractions of the orthogonal resource given to user 1 and user 2."""

    lam1: float
    lam2: float

    def __post_init__(self):
        _check_simplex("DofSplit", self.lam1, self.lam2)

    @classmethod
    def from_strong(cls, lam1: float) -> "DofSplit":
        lam1 = float(lam1)
        return cls(lam1, 1.0 - lam1)

    @classmethod
    def equal(cls) -> "DofSplit":
        return cls(0.5, 0.5)


@dataclass(frozen=True)
class RatePair:
    r1: float
    r2: float

    def __post_init__(self):
        if not (np.isfinite(self.r1) and np.isfinite(self.r2)):
            raise ValueError("rates must be finite")
        if self.r1 < 0 or self.r2 < 0:
            raise ValueError(f"rates must be non-negative, got ({self.r1}, {self.r2})")

    @property
    def total(self) -> float:
        return self.r1 + self.r2


def log2_1p(x):
    """``log2(1 + x)`` accurate for small ``x``."""
    return np.log1p(x) / _LN2


def noma_rates_vec(gamma1, gamma2, rho, a1sq):
    """NOMA rates for strong-user power fraction ``a1sq`` (broadcasts)."""
    a1sq = np.asarray(a1sq, dtype=float)
    a2sq = 1.0 - a1sq
    r1 = log2_1p(rho * a1sq * gamma1)
    r2 = log2_1p(rho * a2sq * gamma2 / (1.0 + rho * a1sq * gamma2))
    return r1, r2


def _oma_single(gain, rho, power, lam):
    lam = np.asarray(lam, dtype=float)
    safe = np.where(lam > 0, lam, 1.0)
    c = rho * power * gain
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        ratio = c / safe
        # c / lam overflows for subnormal lam; fall back to log((lam + c) / lam)
        per_dof = np.where(np.isfinite(ratio), np.log1p(ratio),
                           np.log(safe + c) - np.log(safe)) / _LN2
    # lam -> 0 limit of lam * log2(1 + c / lam) is 0
    return np.where(lam > 0, lam * per_dof, 0.0)


def oma_rates_vec(gamma1, gamma2, rho, a2sq_oma, lam1):
    """OMA rates for OMA weak-user power ``a2sq_oma`` and user-1 DoF ``lam1``."""
    a2sq_oma = np.asarray(a2sq_oma, dtype=float)
    lam1 = np.asarray(lam1, dtype=float)
    r1 = _oma_single(gamma1, rho, 1.0 - a2sq_oma, lam1)
    r2 = _oma_single(gamma2, rho, a2sq_oma, 1.0 - lam1)
    return r1, r2


def optimal_lambda1_vec(gamma1, gamma2, a2sq_oma):
    """User-1 DoF share maximising the OMA sum rate (``nan`` where undefined)."""
    w1 = (1.0 - np.asarray(a2sq_oma, dtype=float)) * gamma1
    w2 = np.asarray(a2sq_oma, dtype=float) * gamma2
    total = w1 + w2
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(total > 0, w1 / np.where(total > 0, total, 1.0), np.nan)


def noma_rates(ec: EffectiveCluster, ps: PowerSplit) -> RatePair:
    r1 = math.log1p(ec.rho * ps.a1sq * ec.gamma1) / _LN2
    r2 = math.log1p(ec.rho * ps.a2sq * ec.gamma2 / (1.0 + ec.rho * ps.a1sq * ec.gamma2)) / _LN2
    return RatePair(r1, r2)


def _oma_rate(gain, rho, power, lam):
    if lam <= 0:
        return 0.0
    c = rho * power * gain
    ratio = c / lam
    if math.isinf(ratio):
        return lam * (math.log(lam + c) - math.log(lam)) / _LN2
    return lam * math.log1p(ratio) / _LN2


def oma_rates(ec: EffectiveCluster, ps: PowerSplit, df: DofSplit) -> RatePair:
    return RatePair(_oma_rate(ec.gamma1, ec.rho, ps.a1sq, df.lam1),
                    _oma_rate(ec.gamma2, ec.rho, ps.a2sq, df.lam2))


def optimal_dof(ec: EffectiveCluster, ps: PowerSplit) -> DofSplit:
    """DoF split at which the OMA sum rate meets its upper bound.

    Each user's share is proportional to its power-weighted gain.
    """
    w1 = ps.a1sq * ec.gamma1
    w2 = ps.a2sq * ec.gamma2
    total = w1 + w2
    if not total > 0:
        raise DegenerateClusterError("degenerate cluster: both weighted gains are zero")
    lam1 = w1 / total
    return DofSplit(lam1, w2 / total)


def oma_sum_bound(ec: EffectiveCluster, ps: PowerSplit) -> float:
    """Largest OMA sum rate over all DoF splits for the given power split."""
    return math.log1p(ec.rho * (ps.a1sq * ec.gamma1 + ps.a2sq * ec.gamma2)) / _LN2


def jain_index(rp: RatePair) -> float:
    """Jain's fairness index of the two rates, in ``[0.5, 1]``."""
    total = rp.r1 + rp.r2
    if not total > 0:
        raise ValueError("Jain's index is undefined for zero total rate")
    return total**2 / (2.0 * (rp.r1**2 + rp.r2**2))
