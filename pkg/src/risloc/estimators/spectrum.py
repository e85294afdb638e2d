"""MUSIC pseudo-spectra over angle / distance grids.

All evaluators share one kernel that exploits the separable structure of
planar-array steering vectors: the phase of element ``(h, v)`` is
``h * a(az, el) + v * b(el) + c(h, v) * g(r)``.  Every grid point is still
evaluated; the factorization only avoids materializing the steering matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np

from ..geometry import (ResponseModel, RisGeometry, near_field_steering, spatial_frequencies,
                        unit_phasor)
from ..subspace import SubspaceSplit

SpectrumKind = Literal["angle2d", "distance1d", "music3d", "music2d"]

# Pseudo-spectrum denominators are floored at this fraction of ||a||^2.
DENOM_FLOOR = 1e-15
# Bound on complex intermediates per chunk (elements).
_CHUNK_ELEMS = 4_000_000


@dataclass(frozen=True)
class Axis:
    name: str
    unit: str
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise ValueError(f"axis {self.name} must be a non-empty 1-D array")
        if v.size > 1 and not np.all(np.diff(v) > 0):
            raise ValueError(f"axis {self.name} must be strictly increasing")
        object.__setattr__(self, "values", v)

    @property
    def label(self) -> str:
        return f"{self.name}_{self.unit}"


@dataclass(frozen=True)
class SpectrumGrid:
    axes: tuple[Axis, ...]
    values: np.ndarray
    kind: SpectrumKind

    def __post_init__(self):
        shape = tuple(a.values.size for a in self.axes)
        if self.values.shape != shape:
            raise ValueError(f"values shape {self.values.shape} does not match axes {shape}")
        if not (np.all(np.isfinite(self.values)) and np.all(self.values >= 0)):
            raise ValueError("spectrum values must be finite and non-negative")

    @property
    def evaluations(self) -> int:
        return int(self.values.size)

    def axis(self, name: str) -> Axis:
        for a in self.axes:
            if a.name == name:
                return a
        raise KeyError(name)

    def point(self, index) -> tuple[float, ...]:
        return tuple(float(a.values[i]) for a, i in zip(self.axes, index))

    def to_csv(self, path) -> Path:
        """One row per grid point: axis values, then the spectrum value."""
        path = Path(path)
        mesh = np.meshgrid(*(a.values for a in self.axes), indexing="ij")
        cols = [m.ravel() for m in mesh] + [self.values.ravel()]
        header = ",".join([a.label for a in self.axes] + ["spectrum"])
        try:
            np.savetxt(path, np.column_stack(cols), fmt="%.17g", delimiter=",",
                       header=header, comments="")
        except OSError as exc:
            raise OSError(f"cannot write spectrum to {path}: {exc}") from exc
        return path


def _basis_for(subspace, dim: int):
    """Pick the cheaper of the noise projection or the signal complement.

    Returns ``(basis, complement)``; with ``complement`` the denominator is
    ``||a||^2 - ||basis^H a||^2``.
    """
    if isinstance(subspace, SubspaceSplit):
        if subspace.k < subspace.noise_basis.shape[1]:
            return subspace.signal_basis, True
        return subspace.noise_basis, False
    basis = np.asarray(subspace)
    if basis.shape[0] != dim:
        raise ValueError(f"basis has {basis.shape[0]} rows, expected {dim}")
    return basis, False


def _index_powers(step: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """``exp(1j * step[..., None] * offsets)`` for integer offsets.

    One exponential per step value; the rest are products and conjugates.
    """
    step = np.asarray(step, float)
    offsets = np.asarray(offsets, int)
    kmax = int(np.abs(offsets).max(initial=0))
    pos = np.empty((kmax + 1,) + step.shape, dtype=complex)
    pos[0] = 1.0
    if kmax:
        pos[1] = unit_phasor(step)
    for i in range(2, kmax + 1):
        np.multiply(pos[i - 1], pos[1], out=pos[i])
    if offsets.size == kmax + 1 and offsets[0] == 0 and np.all(np.diff(offsets) == 1):
        return np.moveaxis(pos, 0, -1)
    out = np.empty((offsets.size,) + step.shape, dtype=complex)
    for i, o in enumerate(offsets):
        if o >= 0:
            out[i] = pos[o]
        else:
            np.conjugate(pos[-o], out=out[i])
    return np.moveaxis(out, 0, -1)


def separable_projection_power(basis: np.ndarray, h_off: np.ndarray, v_off: np.ndarray,
                               h_step: np.ndarray, v_step: np.ndarray,
                               curvature: np.ndarray | None = None) -> np.ndarray:
    """``sum_m |u_m^H a|^2`` for every grid point.

    Args:
        basis: (H*V, m) basis, rows in element order (horizontal fastest).
        h_off, v_off: index offsets of the H columns / V rows.
        h_step: (E, A) horizontal phase step per elevation and azimuth.
        v_step: (E,) vertical phase step per elevation.
        curvature: (R, H*V) extra phase per distance sample, or None.

    Returns:
        Array of shape (A, E, R) with R = 1 when ``curvature`` is None.
    """
    n_h, n_v = h_off.size, v_off.size
    m = basis.shape[1]
    ub = basis.conj().reshape(n_v, n_h, m)
    if curvature is None:
        w = ub[None]
    else:
        w = ub[None] * np.exp(1j * curvature).reshape(-1, n_v, n_h)[..., None]
    n_r = w.shape[0]
    # (V, R*H*m)
    w_t = np.ascontiguousarray(w.transpose(1, 0, 2, 3)).reshape(n_v, -1)
    n_e, n_a = h_step.shape
    out = np.empty((n_a, n_e, n_r))
    per_el = max(n_a * n_r * m, n_r * n_h * m)
    chunk = max(1, _CHUNK_ELEMS // per_el)
    for e0 in range(0, n_e, chunk):
        e1 = min(n_e, e0 + chunk)
        ev = _index_powers(v_step[e0:e1], v_off)                     # (e, V)
        x = (ev @ w_t).reshape(e1 - e0, n_r, n_h, m)
        x = x.transpose(0, 2, 1, 3).reshape(e1 - e0, n_h, n_r * m)
        eh = _index_powers(h_step[e0:e1], h_off)                     # (e, A, H)
        p = np.matmul(eh, x).reshape(e1 - e0, n_a, n_r, m)
        out[:, e0:e1, :] = np.einsum("earm,earm->ear", p.real, p.real).transpose(1, 0, 2) \
            + np.einsum("earm,earm->ear", p.imag, p.imag).transpose(1, 0, 2)
    return out


def _pseudo(power: np.ndarray, norm2: float, complement: bool) -> np.ndarray:
    denom = norm2 - power if complement else power
    return 1.0 / np.maximum(denom, DENOM_FLOOR * norm2)


def _angle_axes(azimuths, elevations) -> tuple[Axis, Axis]:
    return Axis("azimuth", "rad", azimuths), Axis("elevation", "rad", elevations)


def _fresnel_factors(geom: RisGeometry, azimuths, elevations, ranges):
    az = np.asarray(azimuths, float)
    el = np.asarray(elevations, float)
    f = spatial_frequencies(az[None, :], el[:, None], 1.0, geom)
    h_step = np.broadcast_to(f.alpha, (el.size, az.size))
    v_step = spatial_frequencies(0.0, el, 1.0, geom).beta
    curv2 = (geom.h_indices * geom.d_h) ** 2 + (geom.v_indices * geom.d_v) ** 2
    gamma = np.pi / (geom.wavelength * np.asarray(ranges, float))
    curvature = -np.outer(gamma, curv2)
    h_off = np.arange(geom.n_h) - (geom.n_h - 1) // 2
    v_off = np.arange(geom.n_v) - (geom.n_v - 1) // 2
    return h_off, v_off, h_step, v_step, curvature


def dense_projection_power(basis: np.ndarray, geom: RisGeometry, azimuths, elevations, ranges,
                           model: ResponseModel = "exact") -> np.ndarray:
    """Same quantity as the separable kernel, from explicit steering matrices."""
    az, el, r = (np.atleast_1d(np.asarray(g, float)) for g in (azimuths, elevations, ranges))
    out = np.empty((az.size, el.size, r.size))
    ub = basis.conj().T
    chunk = max(1, _CHUNK_ELEMS // (geom.n * el.size * r.size))
    for a0 in range(0, az.size, chunk):
        sub = az[a0:a0 + chunk]
        mesh = np.meshgrid(sub, el, r, indexing="ij")
        steer = near_field_steering(*mesh, geom, model).reshape(geom.n, -1)
        p = ub @ steer
        out[a0:a0 + sub.size] = (p.real**2 + p.imag**2).sum(axis=0).reshape(sub.size, el.size, r.size)
    return out


def full_array_spectrum(subspace, geom: RisGeometry, azimuths, elevations, ranges,
                        model: ResponseModel = "fresnel") -> np.ndarray:
    """Full-array MUSIC pseudo-spectrum, shape (A, E, R)."""
    basis, complement = _basis_for(subspace, geom.n)
    if model == "fresnel" and np.size(azimuths) * np.size(elevations) > 1:
        power = separable_projection_power(
            basis, *_fresnel_factors(geom, azimuths, elevations, ranges))
    else:
        power = dense_projection_power(basis, geom, azimuths, elevations, ranges, model)
    return _pseudo(power, float(geom.n), complement)


def angle_spectrum(noise_basis, azimuths, elevations, geom: RisGeometry,
                   d_h: int, d_v: int) -> SpectrumGrid:
    """Sub-RIS angle spectrum ``1 / (b^H Un Un^H b)`` on an azimuth x elevation grid.

    ``noise_basis`` is the noise basis of the smoothed covariance, or the full
    SubspaceSplit (which lets the cheaper signal complement be used).
    """
    azimuths = np.atleast_1d(np.asarray(azimuths, float))
    elevations = np.atleast_1d(np.asarray(elevations, float))
    if azimuths.size == 0 or elevations.size == 0:
        raise ValueError("empty angle grid")
    basis, complement = _basis_for(noise_basis, d_h * d_v)
    f = spatial_frequencies(azimuths[None, :], elevations[:, None], 1.0, geom)
    h_step = 2 * np.broadcast_to(f.alpha, (elevations.size, azimuths.size))
    v_step = 2 * spatial_frequencies(0.0, elevations, 1.0, geom).beta
    power = separable_projection_power(basis, np.arange(d_h), np.arange(d_v), h_step, v_step)
    values = _pseudo(power[..., 0], float(d_h * d_v), complement)
    return SpectrumGrid(_angle_axes(azimuths, elevations), values, "angle2d")


def distance_spectrum(azimuth: float, elevation: float, subspace, r_grid,
                      geom: RisGeometry, model: ResponseModel = "fresnel") -> SpectrumGrid:
    r_grid = np.atleast_1d(np.asarray(r_grid, float))
    if r_grid.size == 0:
        raise ValueError("empty distance grid")
    if np.any(r_grid <= 0):
        raise ValueError("distance grid must be strictly positive")
    values = full_array_spectrum(subspace, geom, [azimuth], [elevation], r_grid, model)[0, 0]
    return SpectrumGrid((Axis("distance", "m", r_grid),), values, "distance1d")


def music3d_spectrum(subspace, azimuths, elevations, ranges, geom: RisGeometry,
                     model: ResponseModel = "fresnel") -> SpectrumGrid:
    azimuths, elevations, ranges = (np.atleast_1d(np.asarray(g, float))
                                    for g in (azimuths, elevations, ranges))
    if min(azimuths.size, elevations.size, ranges.size) == 0:
        raise ValueError("empty 3D grid")
    values = full_array_spectrum(subspace, geom, azimuths, elevations, ranges, model)
    axes = _angle_axes(azimuths, elevations) + (Axis("distance", "m", ranges),)
    return SpectrumGrid(axes, values, "music3d")


def music2d_spectrum(subspace, azimuths, elevation: float, ranges, geom: RisGeometry,
                     model: ResponseModel = "fresnel") -> SpectrumGrid:
    """Azimuth x distance spectrum at a fixed, known elevation."""
    azimuths = np.atleast_1d(np.asarray(azimuths, float))
    ranges = np.atleast_1d(np.asarray(ranges, float))
    if azimuths.size == 0 or ranges.size == 0:
        raise ValueError("empty 2D grid")
    values = full_array_spectrum(subspace, geom, azimuths, [elevation], ranges, model)[:, 0, :]
    axes = (Axis("azimuth", "rad", azimuths), Axis("distance", "m", ranges))
    return SpectrumGrid(axes, values, "music2d")
