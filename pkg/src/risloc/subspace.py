"""Least-squares recovery of the RIS-incident signal and subspace splitting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .simulator import SnapshotBatch

RANK_TOL = 1e-10


class IllPosedError(np.linalg.LinAlgError):
    """The stacked channel is numerically rank deficient."""


@dataclass(frozen=True)
class RecoveredIncident:
    x: np.ndarray  # N x T


@dataclass(frozen=True)
class SubspaceSplit:
    signal_basis: np.ndarray
    noise_basis: np.ndarray
    eigenvalues: np.ndarray  # descending

    @property
    def dim(self) -> int:
        return self.signal_basis.shape[0]

    @property
    def k(self) -> int:
        return self.signal_basis.shape[1]

    def noise_projector(self) -> np.ndarray:
        return self.noise_basis @ self.noise_basis.conj().T

    def signal_projector(self) -> np.ndarray:
        return self.signal_basis @ self.signal_basis.conj().T


def ls_solve(g: np.ndarray, y: np.ndarray, rtol: float = RANK_TOL) -> np.ndarray:
    """Solve ``min ||g x - y||`` column-wise through an SVD of ``g``.

    Raises IllPosedError when ``g`` does not have full column rank.
    """
    u, s, vh = np.linalg.svd(g, full_matrices=False)
    if s.size == 0 or s[-1] < rtol * s[0] or g.shape[0] < g.shape[1]:
        smin = s[-1] if s.size else 0.0
        raise IllPosedError(
            f"stacked channel is rank deficient: {g.shape[0]}x{g.shape[1]}, "
            f"smallest/largest singular value {smin:.3e}/{s[0] if s.size else 0.0:.3e} "
            f"below tolerance {rtol:g}")
    y = np.asarray(y)
    scale = s if y.ndim == 1 else s[:, None]
    return vh.conj().T @ ((u.conj().T @ y) / scale)


def ls_recover(batch: SnapshotBatch) -> RecoveredIncident:
    return RecoveredIncident(ls_solve(batch.g_tilde, batch.y))


def sample_covariance(x: RecoveredIncident | np.ndarray) -> np.ndarray:
    x = x.x if isinstance(x, RecoveredIncident) else np.asarray(x)
    if x.ndim == 1:
        x = x[:, None]
    r = (x @ x.conj().T) / x.shape[1]
    return 0.5 * (r + r.conj().T)


def eig_split(r: np.ndarray, k: int) -> SubspaceSplit:
    """Eigen-decompose a Hermitian matrix and split off the ``k`` dominant vectors."""
    d = r.shape[0]
    if r.ndim != 2 or r.shape[1] != d:
        raise ValueError(f"expected a square matrix, got shape {r.shape}")
    if not 1 <= k < d:
        raise ValueError(f"need 1 <= K < {d}, got K={k}")
    w, v = np.linalg.eigh(r)
    w, v = w[::-1], v[:, ::-1]
    return SubspaceSplit(signal_basis=v[:, :k], noise_basis=v[:, k:], eigenvalues=w)
