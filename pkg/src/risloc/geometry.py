"""RIS geometry, UE-to-element distances and near-field array responses.

Elements are numbered from the bottom-left corner, row by row, so the
horizontal index varies fastest.  Every vector and matrix in the package
uses this ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

ResponseModel = Literal["exact", "fresnel"]
RESPONSE_MODELS = ("exact", "fresnel")


@dataclass(frozen=True)
class RisGeometry:
    """Uniform planar RIS with an odd number of elements per row and column.

    Attributes:
        n_h: Elements per horizontal row.
        n_v: Elements per vertical column.
        d_h: Horizontal spacing in meters.
        d_v: Vertical spacing in meters.
        wavelength: Carrier wavelength in meters.
    """

    n_h: int
    n_v: int
    d_h: float
    d_v: float
    wavelength: float

    def __post_init__(self):
        for name in ("n_h", "n_v"):
            v = getattr(self, name)
            if int(v) != v or v < 1 or v % 2 == 0:
                raise ValueError(f"{name} must be a positive odd integer, got {v}")
        for name in ("d_h", "d_v", "wavelength"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

    @property
    def n(self) -> int:
        return self.n_h * self.n_v

    @property
    def h_indices(self) -> np.ndarray:
        """Horizontal index of every element, in element order."""
        return np.tile(np.arange(self.n_h) - (self.n_h - 1) // 2, self.n_v)

    @property
    def v_indices(self) -> np.ndarray:
        """Vertical index of every element, in element order."""
        return np.repeat(np.arange(self.n_v) - (self.n_v - 1) // 2, self.n_h)

    @property
    def diagonal(self) -> float:
        return float(np.hypot((self.n_h - 1) * self.d_h, (self.n_v - 1) * self.d_v))

    @property
    def fraunhofer_distance(self) -> float:
        return 2.0 * self.diagonal**2 / self.wavelength

    @classmethod
    def half_wavelength(cls, n_h: int, n_v: int, wavelength: float = 0.3) -> "RisGeometry":
        return cls(n_h, n_v, 0.5 * wavelength, 0.5 * wavelength, wavelength)


@dataclass(frozen=True)
class UeTruth:
    """Ground-truth position and link budget of one user.

    ``path_loss`` is a dimensionless power gain, so the received power
    scale of the user's symbols is ``q = tx_power * path_loss``.
    """

    azimuth: float
    elevation: float
    range: float
    tx_power: float
    path_loss: float

    def __post_init__(self):
        half_pi = np.pi / 2
        if not -half_pi < self.azimuth < half_pi:
            raise ValueError(f"azimuth {self.azimuth} outside (-pi/2, pi/2)")
        if not -half_pi < self.elevation < half_pi:
            raise ValueError(f"elevation {self.elevation} outside (-pi/2, pi/2)")
        if not self.range > 0:
            raise ValueError(f"range must be positive, got {self.range}")
        if not self.tx_power > 0:
            raise ValueError(f"tx_power must be positive, got {self.tx_power}")
        if not 0 < self.path_loss <= 1:
            raise ValueError(f"path_loss must lie in (0, 1], got {self.path_loss}")

    @property
    def q(self) -> float:
        return self.tx_power * self.path_loss


@dataclass(frozen=True)
class SpatialFrequencies:
    alpha: np.ndarray | float
    beta: np.ndarray | float
    gamma: np.ndarray | float


def spatial_frequencies(azimuth, elevation, range_, geom: RisGeometry) -> SpatialFrequencies:
    """Phase increments per horizontal/vertical index and the curvature term.

    Broadcasts over array-valued angles and ranges.
    """
    k0 = 2 * np.pi / geom.wavelength
    azimuth = np.asarray(azimuth, dtype=float)
    elevation = np.asarray(elevation, dtype=float)
    alpha = k0 * geom.d_h * np.sin(azimuth) * np.cos(elevation)
    beta = k0 * geom.d_v * np.sin(elevation)
    gamma = np.pi / (geom.wavelength * np.asarray(range_, dtype=float))
    return SpatialFrequencies(alpha, beta, gamma)


def element_indices(n: int, geom: RisGeometry) -> tuple[int, int]:
    """Map a 1-based element number to its (horizontal, vertical) index pair."""
    if not 1 <= n <= geom.n:
        raise IndexError(f"element number {n} outside [1, {geom.n}]")
    n_h_idx = (n - 1) % geom.n_h - (geom.n_h - 1) // 2
    n_v_idx = (n - 1) // geom.n_h - (geom.n_v - 1) // 2
    return n_h_idx, n_v_idx


def exact_distance(ue: UeTruth, n_h_idx, n_v_idx, geom: RisGeometry):
    r, phi, theta = ue.range, ue.azimuth, ue.elevation
    x = r * np.cos(phi) * np.cos(theta)
    y = r * np.sin(phi) * np.cos(theta) - np.asarray(n_h_idx) * geom.d_h
    z = r * np.sin(theta) - np.asarray(n_v_idx) * geom.d_v
    return np.sqrt(x * x + y * y + z * z)


def fresnel_distance(ue: UeTruth, n_h_idx, n_v_idx, geom: RisGeometry):
    r, phi, theta = ue.range, ue.azimuth, ue.elevation
    h = np.asarray(n_h_idx) * geom.d_h
    v = np.asarray(n_v_idx) * geom.d_v
    return r - h * np.sin(phi) * np.cos(theta) - v * np.sin(theta) + (h * h + v * v) / (2 * r)


def unit_phasor(phase) -> np.ndarray:
    """``exp(1j * phase)`` for real ``phase``, via cos and sin."""
    phase = np.asarray(phase, dtype=float)
    out = np.empty(phase.shape, dtype=complex)
    parts = out.view(float).reshape(phase.shape + (2,))
    np.cos(phase, out=parts[..., 0])
    np.sin(phase, out=parts[..., 1])
    return out


def near_field_steering(azimuth, elevation, range_, geom: RisGeometry,
                        model: ResponseModel = "fresnel") -> np.ndarray:
    """Array responses for parameter arrays of a common broadcast shape.

    Returns a complex array of shape ``(N,) + shape``.
    """
    azimuth, elevation, range_ = np.broadcast_arrays(
        np.asarray(azimuth, float), np.asarray(elevation, float), np.asarray(range_, float))
    nh = geom.h_indices.reshape((-1,) + (1,) * azimuth.ndim)
    nv = geom.v_indices.reshape((-1,) + (1,) * azimuth.ndim)
    if model == "fresnel":
        f = spatial_frequencies(azimuth, elevation, range_, geom)
        curv = (nh * geom.d_h) ** 2 + (nv * geom.d_v) ** 2
        phase = nh * f.alpha + nv * f.beta - curv * f.gamma
    elif model == "exact":
        x = range_ * np.cos(azimuth) * np.cos(elevation)
        y = range_ * np.sin(azimuth) * np.cos(elevation) - nh * geom.d_h
        z = range_ * np.sin(elevation) - nv * geom.d_v
        dist = np.sqrt(x * x + y * y + z * z)
        phase = 2 * np.pi / geom.wavelength * (range_ - dist)
    else:
        raise ValueError(f"unknown response model {model!r}")
    return unit_phasor(phase)


def array_response(ue: UeTruth, geom: RisGeometry, model: ResponseModel = "exact") -> np.ndarray:
    return near_field_steering(ue.azimuth, ue.elevation, ue.range, geom, model)


def array_response_matrix(ues: Sequence[UeTruth], geom: RisGeometry,
                          model: ResponseModel = "exact") -> np.ndarray:
    if len(ues) == 0:
        raise ValueError("array_response_matrix needs at least one UE")
    return near_field_steering([u.azimuth for u in ues], [u.elevation for u in ues],
                               [u.range for u in ues], geom, model)


def angle_steering(alpha, beta, d_h: int, d_v: int) -> np.ndarray:
    """Sub-RIS steering vector with doubled phase increments.

    Entry ``(p, q)``, stored at ``q * d_h + p``, is ``exp(2j (p alpha + q beta))``.
    Array-valued ``alpha``/``beta`` add trailing dimensions.
    """
    if d_h < 1 or d_v < 1:
        raise ValueError("sub-RIS dimensions must be >= 1")
    alpha, beta = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(beta, float))
    extra = (1,) * alpha.ndim
    p = np.tile(np.arange(d_h), d_v).reshape((-1,) + extra)
    q = np.repeat(np.arange(d_v), d_h).reshape((-1,) + extra)
    return np.exp(2j * (p * alpha + q * beta))


def direction_cosines(azimuth, elevation):
    """(u, v) = (sin az cos el, sin el), the coordinates the phase depends on."""
    return np.sin(azimuth) * np.cos(elevation), np.sin(elevation)


def angles_from_cosines(u, v):
    elevation = np.arcsin(v)
    azimuth = np.arcsin(np.clip(u / np.cos(elevation), -1.0, 1.0))
    return azimuth, elevation
