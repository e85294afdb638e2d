"""Half-maximum area of angle-spectrum peaks.

MUSIC peaks at high SNR are far narrower than a practical search grid, so
the area is measured on a local grid whose extent adapts to the peak.
"""

from __future__ import annotations

import numpy as np

from ..estimators import angle_spectrum
from ..geometry import RisGeometry

_CELLS = 101            # local grid points per dimension
_MIN_CELLS = 400        # re-zoom when the region covers fewer cells than this


def _grow(seed: np.ndarray, allowed: np.ndarray) -> np.ndarray:
    """8-connected component of ``allowed`` containing ``seed``."""
    region = seed & allowed
    while True:
        padded = np.pad(region, 1)
        grown = region.copy()
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                grown |= padded[1 + dx:1 + dx + region.shape[0], 1 + dy:1 + dy + region.shape[1]]
        grown &= allowed
        if np.array_equal(grown, region):
            return region
        region = grown


def half_max_region(values: np.ndarray, peak: tuple[int, int]) -> np.ndarray:
    """Connected set of grid points at or above half the value at ``peak``."""
    seed = np.zeros(values.shape, dtype=bool)
    seed[peak] = True
    return _grow(seed, values >= 0.5 * values[peak])


def half_max_area(spectrum_fn, azimuth: float, elevation: float, width: float = 0.02,
                  max_iter: int = 40) -> tuple[float, tuple[float, float]]:
    """Area (rad^2, in azimuth x elevation) of the half-maximum region of the
    peak nearest ``(azimuth, elevation)``.

    ``spectrum_fn(az_values, el_values)`` returns a 2-D array.  The local
    window is re-centred on the peak, widened while the region touches its
    border and narrowed while the region covers too few cells.
    """
    center = np.array([azimuth, elevation], dtype=float)
    for _ in range(max_iter):
        az = center[0] + np.linspace(-width, width, _CELLS)
        el = center[1] + np.linspace(-width, width, _CELLS)
        el = el[np.abs(el) < np.pi / 2]
        az = az[np.abs(az) < np.pi / 2]
        values = np.asarray(spectrum_fn(az, el), dtype=float)
        peak = np.unravel_index(np.argmax(values), values.shape)
        new_center = np.array([az[peak[0]], el[peak[1]]])
        on_edge = peak[0] in (0, az.size - 1) or peak[1] in (0, el.size - 1)
        if on_edge:
            center = new_center
            continue
        region = half_max_region(values, peak)
        touches = region[0].any() or region[-1].any() or region[:, 0].any() or region[:, -1].any()
        if touches:
            width *= 2
            center = new_center
            continue
        if region.sum() < _MIN_CELLS:
            width /= 3
            center = new_center
            continue
        cell = (az[1] - az[0]) * (el[1] - el[0])
        return float(region.sum() * cell), (float(new_center[0]), float(new_center[1]))
    raise RuntimeError("half-maximum region did not settle; check the spectrum near the peak")


def angle_peak_area(split, geom: RisGeometry, d_h: int, d_v: int, azimuth: float,
                    elevation: float, **kw) -> tuple[float, tuple[float, float]]:
    """Half-maximum area of a sub-RIS angle-spectrum peak."""
    return half_max_area(lambda a, e: angle_spectrum(split, a, e, geom, d_h, d_v).values,
                         azimuth, elevation, **kw)
