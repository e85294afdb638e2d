"""Strict local-maximum peak picking on gridded spectra."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .spectrum import SpectrumGrid


@dataclass(frozen=True)
class Peaks:
    indices: tuple[tuple[int, ...], ...]
    points: tuple[tuple[float, ...], ...]
    values: tuple[float, ...]
    degenerate: bool


def strict_local_maxima(values: np.ndarray) -> np.ndarray:
    """Boolean mask of points strictly above all 3^d - 1 neighbours.

    Points outside the grid count as -inf, so edge points qualify.
    """
    v = np.asarray(values, dtype=float)
    padded = np.pad(v, 1, mode="constant", constant_values=-np.inf)
    mask = np.ones(v.shape, dtype=bool)
    center = tuple(slice(1, 1 + s) for s in v.shape)
    for shift in itertools.product((-1, 0, 1), repeat=v.ndim):
        if not any(shift):
            continue
        neigh = tuple(slice(1 + d, 1 + d + s) for d, s in zip(shift, v.shape))
        mask &= padded[center] > padded[neigh]
    return mask


def ranked_maxima(values: np.ndarray, limit: int | None = None) -> list[tuple[int, ...]]:
    """Indices of strict local maxima, largest value first (at most ``limit``)."""
    idx = np.argwhere(strict_local_maxima(values))
    order = np.argsort(-values[tuple(idx.T)], kind="stable")[:limit]
    return [tuple(int(i) for i in idx[j]) for j in order]


def _quadratic_offset(lo: float, mid: float, hi: float) -> float:
    den = lo - 2 * mid + hi
    if den >= 0:
        return 0.0
    return float(np.clip(0.5 * (lo - hi) / den, -0.5, 0.5))


def refine_point(spec: SpectrumGrid, index: tuple[int, ...]) -> tuple[float, ...]:
    """Per-axis parabolic interpolation of a peak location (on a log scale)."""
    logv = np.log(spec.values)
    point = []
    for ax, (axis, i) in enumerate(zip(spec.axes, index)):
        vals = axis.values
        if 0 < i < vals.size - 1:
            sl = list(index)
            sl[ax] = i - 1
            lo = logv[tuple(sl)]
            sl[ax] = i + 1
            hi = logv[tuple(sl)]
            off = _quadratic_offset(lo, logv[index], hi)
            step = vals[i + 1] - vals[i] if off > 0 else vals[i] - vals[i - 1]
            point.append(float(vals[i] + off * step))
        else:
            point.append(float(vals[i]))
    return tuple(point)


def find_peaks(spec: SpectrumGrid, k: int, refine: bool = False) -> Peaks:
    """Top-``k`` strict local maxima of a spectrum.

    If fewer than ``k`` exist, the largest remaining grid points pad the
    result and ``degenerate`` is set.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > spec.values.size:
        raise ValueError(f"k={k} exceeds the {spec.values.size} grid points")
    chosen = ranked_maxima(spec.values, k)
    degenerate = len(chosen) < k
    if degenerate:
        taken = set(chosen)
        for flat in np.argsort(-spec.values, axis=None, kind="stable"):
            idx = tuple(int(i) for i in np.unravel_index(flat, spec.values.shape))
            if idx not in taken:
                chosen.append(idx)
                taken.add(idx)
            if len(chosen) == k:
                break
    points = tuple(refine_point(spec, i) if refine else spec.point(i) for i in chosen)
    values = tuple(float(spec.values[i]) for i in chosen)
    return Peaks(tuple(chosen), points, values, degenerate)


def find_peaks_2d(spec: SpectrumGrid, k: int, refine: bool = False) -> Peaks:
    if spec.values.ndim != 2 or min(spec.values.shape) < 3:
        raise ValueError("2-D peak search needs a grid of at least 3x3")
    return find_peaks(spec, k, refine)
