"""Synthetic received-signal generation for RIS-assisted uplink localization."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .geometry import (RESPONSE_MODELS, ResponseModel, RisGeometry, UeTruth,
                       array_response_matrix)
from .grids import SearchGrids


def dbm_to_watts(dbm):
    return 10.0 ** ((np.asarray(dbm, dtype=float) - 30.0) / 10.0)


def watts_to_dbm(watts):
    return 10.0 * np.log10(np.asarray(watts, dtype=float)) + 30.0


class RankConditionError(ValueError):
    """Smoothing sizes cannot separate the requested number of users."""


def check_rank_conditions(geom: RisGeometry, smoothing: tuple[int, int], k: int) -> None:
    d_h, d_v = smoothing
    if not (1 <= d_h <= geom.n_h and 1 <= d_v <= geom.n_v):
        raise RankConditionError(
            f"sub-RIS size {d_h}x{d_v} does not fit a {geom.n_h}x{geom.n_v} RIS")
    j = (geom.n_h - d_h + 1) * (geom.n_v - d_v + 1)
    if d_h * d_v <= k:
        raise RankConditionError(f"sub-RIS size D_H*D_V={d_h * d_v} must exceed K={k}")
    if j <= k:
        raise RankConditionError(f"number of sub-RISs J={j} must exceed K={k}")


@dataclass(frozen=True)
class Scenario:
    """Everything needed to simulate and localize one experiment.

    ``sim_model`` selects the distance model used to synthesize signals;
    the estimators always use the Fresnel form.
    """

    geom: RisGeometry
    ues: tuple[UeTruth, ...]
    m_bs: int
    t_samples: int
    noise_power: float
    smoothing: tuple[int, int]
    l_subslots: int | None = None
    rician_factor: float = 2.0
    grids: SearchGrids | None = None
    rng_seed: int = 0
    sim_model: ResponseModel = "exact"
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ues", tuple(self.ues))
        object.__setattr__(self, "smoothing", tuple(int(d) for d in self.smoothing))
        if self.l_subslots is None:
            object.__setattr__(self, "l_subslots", math.ceil(self.geom.n / self.m_bs))
        if self.grids is None:
            object.__setattr__(self, "grids", SearchGrids.default(self.geom))
        if not self.ues:
            raise ValueError("scenario needs at least one UE")
        if self.m_bs < 1:
            raise ValueError("m_bs must be >= 1")
        if self.t_samples < 1:
            raise ValueError("t_samples must be >= 1")
        if self.l_subslots * self.m_bs < self.geom.n:
            raise ValueError(
                f"L*M = {self.l_subslots * self.m_bs} < N = {self.geom.n}: "
                "stacked channel cannot have full column rank")
        if self.l_subslots > self.geom.n:
            raise ValueError("l_subslots cannot exceed the number of RIS elements")
        if self.noise_power < 0:
            raise ValueError("noise_power must be non-negative")
        if self.rician_factor < 0:
            raise ValueError("rician_factor must be non-negative")
        if self.sim_model not in RESPONSE_MODELS:
            raise ValueError(f"sim_model must be one of {RESPONSE_MODELS}")
        check_rank_conditions(self.geom, self.smoothing, self.k)

    @property
    def k(self) -> int:
        return len(self.ues)

    @property
    def j_count(self) -> int:
        d_h, d_v = self.smoothing
        return (self.geom.n_h - d_h + 1) * (self.geom.n_v - d_v + 1)

    def replace(self, **changes) -> "Scenario":
        return replace(self, **changes)

    def with_tx_power(self, watts: float) -> "Scenario":
        return self.replace(ues=tuple(replace(u, tx_power=watts) for u in self.ues))


@dataclass(frozen=True)
class SnapshotBatch:
    """Stacked received samples ``y`` (LM x T), effective channel ``g_tilde``
    (LM x N) and the scaled user symbols ``s_true`` (K x T)."""

    y: np.ndarray
    g_tilde: np.ndarray
    s_true: np.ndarray

    def __post_init__(self):
        if self.y.shape[0] != self.g_tilde.shape[0]:
            raise ValueError("y and g_tilde row counts differ")


def complex_gaussian(rng: np.random.Generator, shape, variance: float = 1.0) -> np.ndarray:
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def dft_configurations(n: int, l: int) -> list[np.ndarray]:
    """Phase-shift vectors taken from the first ``l`` columns of the N-point DFT."""
    if l > n:
        raise ValueError(f"cannot pick {l} distinct DFT columns of size {n}")
    idx = np.arange(n)
    return [np.exp(-2j * np.pi * idx * col / n) for col in range(l)]


def _ula_far_field(m: int, angle: float) -> np.ndarray:
    return np.exp(1j * np.pi * np.arange(m) * np.sin(angle))


def rician_channel(m: int, n: int, kappa: float, rng: np.random.Generator,
                   geom: RisGeometry | None = None) -> np.ndarray:
    """RIS-to-BS channel with unit average entry power.

    The LOS part is the outer product of a half-wavelength BS ULA response and
    a far-field RIS response, at angles drawn uniformly per realization.
    Without ``geom`` the RIS side is treated as a half-wavelength ULA.
    """
    if kappa < 0:
        raise ValueError("Rician factor must be non-negative")
    aod_bs, az, el = rng.uniform(-np.pi / 2, np.pi / 2, size=3)
    a_bs = _ula_far_field(m, aod_bs)
    if geom is None:
        a_ris = _ula_far_field(n, az)
    else:
        if geom.n != n:
            raise ValueError("geometry element count does not match n")
        a_ris = np.exp(1j * np.pi * (geom.h_indices * np.sin(az) * np.cos(el)
                                     + geom.v_indices * np.sin(el)))
    h_los = np.outer(a_bs, a_ris.conj())
    h_nlos = complex_gaussian(rng, (m, n))
    if np.isinf(kappa):
        return h_los
    return np.sqrt(kappa / (1 + kappa)) * h_los + np.sqrt(1 / (1 + kappa)) * h_nlos


def path_loss(r: float, wavelength: float) -> float:
    """Free-space power gain."""
    if not r > 0:
        raise ValueError(f"distance must be positive, got {r}")
    return wavelength**2 / (4 * np.pi * r) ** 2


def build_stacked_channel(h: np.ndarray, configs: Sequence[np.ndarray]) -> np.ndarray:
    """Vertically stack ``H diag(phi_l)`` over the sub-slot configurations."""
    h = np.asarray(h)
    if len(configs) == 0:
        raise ValueError("need at least one configuration")
    for c in configs:
        if np.shape(c) != (h.shape[1],):
            raise ValueError(f"configuration of shape {np.shape(c)} does not match "
                             f"channel with {h.shape[1]} columns")
    return np.concatenate([h * np.asarray(c)[None, :] for c in configs], axis=0)


def generate_snapshots(scn: Scenario, rng: np.random.Generator) -> SnapshotBatch:
    n, m = scn.geom.n, scn.m_bs
    h = rician_channel(m, n, scn.rician_factor, rng, scn.geom)
    g_tilde = build_stacked_channel(h, dft_configurations(n, scn.l_subslots))
    a = array_response_matrix(scn.ues, scn.geom, scn.sim_model)
    q = np.array([u.q for u in scn.ues])
    s = np.sqrt(q)[:, None] * complex_gaussian(rng, (scn.k, scn.t_samples))
    w = complex_gaussian(rng, (g_tilde.shape[0], scn.t_samples), scn.noise_power)
    y = g_tilde @ (a @ s) + w
    return SnapshotBatch(y=y, g_tilde=g_tilde, s_true=s)
