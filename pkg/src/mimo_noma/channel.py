"""Random multi-cluster MIMO channel synthesis.

Each of the ``M`` clusters holds two users with ``N`` receive antennas. The
channel from the base station to a user is ``H = G / L`` where ``G`` is an
``N x M`` matrix of unit-variance circularly-symmetric complex Gaussian
entries and ``L`` is an amplitude path-loss divisor with ``L**2 = d**exponent``.
Noise power is normalised to one, so ``snr_rho`` is the transmit SNR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

__all__ = [
    "SystemConfig",
    "ClusterChannel",
    "AlignmentInfeasibleError",
    "path_loss",
    "complex_gaussian",
    "draw_clusters",
]


class AlignmentInfeasibleError(ValueError):
    """Raised when ``2N <= M`` leaves no room for receive-side signal alignment."""


def _default_user_antennas(num_clusters: int) -> int:
    return num_clusters // 2 + 1


@dataclass(frozen=True)
class SystemConfig:
    """System-wide parameters shared by every cluster.

    ``user_antennas`` defaults to ``M // 2 + 1``, the smallest receiver size
    with ``2N > M``.  ``distance_range`` is in metres relative to a 1 m
    reference distance.
    """

    num_clusters: int = 4
    user_antennas: Optional[int] = None
    snr_rho: float = 1000.0
    path_loss_exponent: float = 3.8
    distance_range: Tuple[float, float] = (1.0, 3.0)
    rng_seed: int = 0

    def __post_init__(self):
        if self.user_antennas is None:
            object.__setattr__(self, "user_antennas",
                               _default_user_antennas(self.num_clusters))
        object.__setattr__(self, "distance_range",
                           tuple(float(d) for d in self.distance_range))
        if self.num_clusters < 1 or self.user_antennas < 1:
            raise ValueError("num_clusters and user_antennas must be positive")
        if 2 * self.user_antennas <= self.num_clusters:
            raise AlignmentInfeasibleError(
                f"alignment infeasible: 2N = {2 * self.user_antennas} "
                f"must exceed M = {self.num_clusters}")
        if not self.snr_rho > 0:
            raise ValueError("snr_rho must be positive")
        if not self.path_loss_exponent > 0:
            raise ValueError("path_loss_exponent must be positive")
        dmin, dmax = self.distance_range
        if not 0 < dmin < dmax:
            raise ValueError("distance_range must satisfy 0 < min < max")
        if not 0 <= int(self.rng_seed) < 2**64:
            raise ValueError("rng_seed must be a non-negative 64-bit integer")


@dataclass(frozen=True)
class ClusterChannel:
    """Small-scale fading and path loss of the two users in one cluster."""

    g1: np.ndarray
    g2: np.ndarray
    l1: float
    l2: float
    cluster_index: int = 0

    def __post_init__(self):
        if self.g1.shape != self.g2.shape or self.g1.ndim != 2:
            raise ValueError("g1 and g2 must be N x M matrices of equal shape")
        if not (np.all(np.isfinite(self.g1)) and np.all(np.isfinite(self.g2))):
            raise ValueError("fading matrices must be finite")
        if not (self.l1 > 0 and self.l2 > 0):
            raise ValueError("path losses must be positive")

    @property
    def h1(self) -> np.ndarray:
        return self.g1 / self.l1

    @property
    def h2(self) -> np.ndarray:
        return self.g2 / self.l2


def path_loss(distance: float, exponent: float) -> float:
    """Amplitude path-loss divisor ``distance ** (exponent / 2)``."""
    if not distance > 0:
        raise ValueError(f"distance must be positive, got {distance!r}")
    if not exponent > 0:
        raise ValueError(f"exponent must be positive, got {exponent!r}")
    return float(distance) ** (float(exponent) / 2.0)


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """CN(0, 1) samples: real and imaginary parts each of variance 1/2."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def draw_clusters(config: SystemConfig, seed: Optional[int] = None,
                  rng: Optional[np.random.Generator] = None) -> List[ClusterChannel]:
    """Draw one block-fading realisation for all ``M`` clusters.

    The generator is seeded from ``seed`` (falling back to
    ``config.rng_seed``) unless an explicit ``rng`` is given.
    """
    if rng is None:
        rng = np.random.default_rng(config.rng_seed if seed is None else seed)
    m, n = config.num_clusters, config.user_antennas
    dmin, dmax = config.distance_range
    clusters = []
    for idx in range(m):
        g1 = complex_gaussian(rng, (n, m))
        g2 = complex_gaussian(rng, (n, m))
        d1, d2 = rng.uniform(dmin, dmax, size=2)
        clusters.append(ClusterChannel(
            g1=g1, g2=g2,
            l1=path_loss(d1, config.path_loss_exponent),
            l2=path_loss(d2, config.path_loss_exponent),
            cluster_index=idx,
        ))
    return clusters
