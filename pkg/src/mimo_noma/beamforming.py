"""Receive-side signal alignment and zero-forcing transmit precoding.

Within a cluster the two receive vectors are chosen so that
``v2^H G2`` is parallel to ``v1^H G1``.  One row per cluster then describes
both users to the base station, and inverting the stacked rows gives a
precoder that nulls inter-cluster interference for every user.  What is left
is the scalar model of :class:`EffectiveCluster`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .channel import ClusterChannel

__all__ = [
    "DegenerateChannelError",
    "SingularChannelError",
    "EffectiveCluster",
    "BeamformingSolution",
    "left_null_space",
    "alignment_vector",
    "alignment_residual",
    "align_receivers",
    "zf_precoder",
    "effective_cluster",
    "beamform",
    "effective_clusters",
    "inter_cluster_gains",
]

DEGENERATE_NORM = 1e-12
MAX_CONDITION = 1e12


class DegenerateChannelError(RuntimeError):
    """The channel draw cannot be aligned or inverted; the caller should resample."""


class SingularChannelError(DegenerateChannelError):
    """Effective channel matrix too ill-conditioned for zero forcing."""


@dataclass(frozen=True)
class EffectiveCluster:
    """Scalar cluster model: ordered effective gains and the transmit SNR.

    ``swapped`` records whether the channel labels were exchanged to put the
    stronger user first.
    """

    gamma1: float
    gamma2: float
    rho: float
    swapped: bool = False

    def __post_init__(self):
        if not (self.gamma2 >= 0 and np.isfinite(self.gamma1)):
            raise ValueError("effective gains must be finite and non-negative")
        if self.gamma1 < self.gamma2:
            raise ValueError(
                f"gains must be ordered gamma1 >= gamma2, got "
                f"({self.gamma1}, {self.gamma2}); use EffectiveCluster.from_gains")
        if not self.rho > 0:
            raise ValueError("rho must be positive")

    @classmethod
    def from_gains(cls, gain_a: float, gain_b: float, rho: float) -> "EffectiveCluster":
        """Build a cluster from unordered gains, stronger user first."""
        gain_a, gain_b = float(gain_a), float(gain_b)
        if gain_a >= gain_b:
            return cls(gain_a, gain_b, float(rho), swapped=False)
        return cls(gain_b, gain_a, float(rho), swapped=True)


@dataclass(frozen=True)
class BeamformingSolution:
    precoder: np.ndarray
    receive_vectors: Tuple[Tuple[np.ndarray, np.ndarray], ...]
    alignment_residuals: np.ndarray


def left_null_space(a: np.ndarray, rtol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis (as columns) of ``{w : w^H a = 0}``."""
    u, s, _ = np.linalg.svd(a, full_matrices=True)
    tol = rtol * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > tol))
    return u[:, rank:]


def alignment_vector(g1: np.ndarray, g2: np.ndarray) -> np.ndarray:
    """Unit vector ``w = [w1; w2]`` with ``w1^H g1 + w2^H g2 = 0``.

    A left singular vector of the stacked ``2N x M`` matrix for its zero
    singular value.  When that singular value is repeated (``2N - M > 1``),
    the vector is the projection of the all-ones direction onto the null
    space, which does not depend on how the SVD picks a basis and so is
    unchanged by a common phase rotation of ``g1`` and ``g2``.
    """
    stacked = np.vstack([g1, g2])
    basis = left_null_space(stacked)
    if basis.shape[1] == 0:
        u, _, _ = np.linalg.svd(stacked, full_matrices=True)
        return u[:, -1]
    if basis.shape[1] == 1:
        return basis[:, 0]
    dim = stacked.shape[0]
    for ref in (np.ones(dim), *np.eye(dim)):
        w = basis @ (basis.conj().T @ ref)
        norm = np.linalg.norm(w)
        if norm > 1e-8:
            return w / norm
    return basis[:, 0]


def alignment_residual(row_a: np.ndarray, row_b: np.ndarray) -> float:
    """Sine of the angle between two complex row vectors."""
    norm_a = np.linalg.norm(row_a)
    norm_b = np.linalg.norm(row_b)
    if norm_a == 0 or norm_b == 0:
        return 1.0
    perp = row_a - (np.vdot(row_b, row_a) / norm_b**2) * row_b
    return float(min(1.0, np.linalg.norm(perp) / norm_a))


def align_receivers(ch: ClusterChannel) -> Tuple[np.ndarray, np.ndarray, float]:
    """Unit receive vectors ``(v1, v2)`` aligning both users, plus the residual."""
    n, m = ch.g1.shape
    if 2 * n <= m:
        raise ValueError("signal alignment needs 2N > M")
    w = alignment_vector(ch.g1, ch.g2)
    w1, w2 = w[:n], w[n:]
    n1, n2 = np.linalg.norm(w1), np.linalg.norm(w2)
    if n1 < DEGENERATE_NORM or n2 < DEGENERATE_NORM:
        raise DegenerateChannelError(
            f"alignment vector has a vanishing half (|w1|={n1:.3g}, |w2|={n2:.3g})")
    v1 = w1 / n1
    v2 = -w2 / n2
    residual = alignment_residual(v1.conj() @ ch.g1, v2.conj() @ ch.g2)
    return v1, v2, residual


def zf_precoder(effective_rows: np.ndarray) -> np.ndarray:
    """Zero-forcing precoder for stacked effective rows ``h_m^H``.

    Returns the inverse of the ``M x M`` row matrix with each column scaled to
    unit norm, so ``h_m^H p_i = 0`` for ``i != m``.
    """
    rows = np.asarray(effective_rows, dtype=complex)
    if rows.ndim != 2 or rows.shape[0] != rows.shape[1]:
        raise ValueError("effective rows must form a square matrix")
    cond = np.linalg.cond(rows)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularChannelError(f"effective channel condition number {cond:.3g}")
    p = np.linalg.inv(rows)
    return p / np.linalg.norm(p, axis=0, keepdims=True)


def effective_cluster(ch: ClusterChannel, p: np.ndarray, v1: np.ndarray,
                      v2: np.ndarray, rho: float) -> EffectiveCluster:
    gain1 = abs(np.vdot(v1, ch.h1 @ p)) ** 2
    gain2 = abs(np.vdot(v2, ch.h2 @ p)) ** 2
    return EffectiveCluster.from_gains(gain1, gain2, rho)


def beamform(clusters: Sequence[ClusterChannel]) -> BeamformingSolution:
    """Align every cluster and build the shared zero-forcing precoder.

    Raises :class:`DegenerateChannelError` on draws that cannot be processed.
    """
    vectors = []
    residuals = []
    rows = []
    for ch in clusters:
        v1, v2, res = align_receivers(ch)
        vectors.append((v1, v2))
        residuals.append(res)
        rows.append(v1.conj() @ ch.h1)
    p = zf_precoder(np.vstack(rows))
    return BeamformingSolution(precoder=p, receive_vectors=tuple(vectors),
                               alignment_residuals=np.asarray(residuals))


def effective_clusters(clusters: Sequence[ClusterChannel], solution: BeamformingSolution,
                       rho: float) -> List[EffectiveCluster]:
    p = solution.precoder
    return [effective_cluster(ch, p[:, m], *solution.receive_vectors[m], rho)
            for m, ch in enumerate(clusters)]


def inter_cluster_gains(clusters: Sequence[ClusterChannel],
                        solution: BeamformingSolution) -> np.ndarray:
    """Array ``out[m, k, i] = |v_{m,k}^H H_{m,k} p_i|^2`` (diagonal ``i == m`` included)."""
    p = solution.precoder
    out = np.empty((len(clusters), 2, p.shape[1]))
    for m, ch in enumerate(clusters):
        v1, v2 = solution.receive_vectors[m]
        out[m, 0] = np.abs(v1.conj() @ ch.h1 @ p) ** 2
        out[m, 1] = np.abs(v2.conj() @ ch.h2 @ p) ** 2
    return out
