"""Anti-diagonal extraction and overlapping sub-RIS spatial smoothing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geometry import RisGeometry


def antidiagonal_vector(r_hat: np.ndarray) -> np.ndarray:
    """Entries ``R[n, N-1-n]`` (0-based), starting from the first element.

    For a centro-symmetric RIS, element ``N-1-n`` mirrors element ``n``
    through the reference element, so the Fresnel curvature phase cancels.
    """
    r_hat = np.asarray(r_hat)
    if r_hat.ndim != 2 or r_hat.shape[0] != r_hat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {r_hat.shape}")
    return np.fliplr(r_hat).diagonal().copy()


@dataclass(frozen=True)
class SmoothingPlan:
    d_h: int
    d_v: int
    origins: tuple[tuple[int, int], ...]  # (n_H, n_V) of each sub-RIS's first element

    @property
    def j_count(self) -> int:
        return len(self.origins)

    @property
    def size(self) -> int:
        return self.d_h * self.d_v


def smoothing_plan(geom: RisGeometry, d_h: int, d_v: int) -> SmoothingPlan:
    """All ``(N_H-D_H+1)(N_V-D_V+1)`` window origins, horizontal shift fastest."""
    if not (1 <= d_h <= geom.n_h and 1 <= d_v <= geom.n_v):
        raise ValueError(f"sub-RIS {d_h}x{d_v} does not fit a {geom.n_h}x{geom.n_v} RIS")
    h0 = -(geom.n_h - 1) // 2
    v0 = -(geom.n_v - 1) // 2
    origins = tuple((h0 + i, v0 + j)
                    for j in range(geom.n_v - d_v + 1)
                    for i in range(geom.n_h - d_h + 1))
    return SmoothingPlan(d_h, d_v, origins)


def smooth_subvectors(y_bar: np.ndarray, plan: SmoothingPlan, geom: RisGeometry) -> np.ndarray:
    """Stack the J window sub-vectors of ``y_bar`` as rows, each row-major.

    Returns an array of shape ``(J, D_H * D_V)``.
    """
    y_bar = np.asarray(y_bar)
    if y_bar.shape != (geom.n,):
        raise ValueError(f"y_bar has shape {y_bar.shape}, expected ({geom.n},)")
    grid = y_bar.reshape(geom.n_v, geom.n_h)
    h0 = (geom.n_h - 1) // 2
    v0 = (geom.n_v - 1) // 2
    out = np.empty((plan.j_count, plan.size), dtype=y_bar.dtype)
    for i, (nh, nv) in enumerate(plan.origins):
        col, row = nh + h0, nv + v0
        if col < 0 or row < 0 or col + plan.d_h > geom.n_h or row + plan.d_v > geom.n_v:
            raise IndexError(f"sub-RIS window at ({nh}, {nv}) leaves the RIS")
        out[i] = grid[row:row + plan.d_v, col:col + plan.d_h].ravel()
    return out


def smoothed_covariance(subvectors) -> np.ndarray:
    ys = np.asarray(subvectors)
    if ys.ndim != 2 or ys.shape[0] < 1:
        raise ValueError("need at least one sub-vector")
    r = ys.T @ ys.conj() / ys.shape[0]
    return 0.5 * (r + r.conj().T)
