"""Estimate-to-truth pairing and NMSE."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..estimators import LocationEstimate
from ..geometry import UeTruth


def pair_estimates(estimates: Sequence[LocationEstimate], truths: Sequence[UeTruth]) -> list[int]:
    """Greedy nearest-neighbour pairing in (azimuth, elevation).

    Returns, for every truth, the index of its estimate.  Equal distances
    go to the estimate with the larger spectrum value.
    """
    if len(estimates) != len(truths):
        raise ValueError(f"{len(estimates)} estimates for {len(truths)} users")
    cands = []
    for i, e in enumerate(estimates):
        for k, t in enumerate(truths):
            d = np.hypot(e.azimuth - t.azimuth, e.elevation - t.elevation)
            cands.append((d, -e.spectrum_value, i, k))
    cands.sort()
    pairing = [-1] * len(truths)
    used = set()
    for _, _, i, k in cands:
        if pairing[k] < 0 and i not in used:
            pairing[k] = i
            used.add(i)
    return pairing


def nmse(estimates: Sequence[LocationEstimate], truths: Sequence[UeTruth],
         pairing: Sequence[int] | None = None) -> tuple[float, float]:
    """Vector-normalized squared error of angles and of distances."""
    if len(estimates) != len(truths):
        raise ValueError(f"{len(estimates)} estimates for {len(truths)} users")
    if pairing is None:
        pairing = pair_estimates(estimates, truths)
    est = [estimates[i] for i in pairing]
    ang_ref = sum(t.azimuth**2 + t.elevation**2 for t in truths)
    dist_ref = sum(t.range**2 for t in truths)
    if ang_ref == 0:
        raise ValueError("angle NMSE undefined: all true angles are zero")
    if dist_ref == 0:
        raise ValueError("distance NMSE undefined: all true ranges are zero")
    ang_err = sum((e.azimuth - t.azimuth) ** 2 + (e.elevation - t.elevation) ** 2
                  for e, t in zip(est, truths))
    dist_err = sum((e.range - t.range) ** 2 for e, t in zip(est, truths))
    return ang_err / ang_ref, dist_err / dist_ref


@dataclass
class TrialResult:
    method: str
    estimates: list[LocationEstimate]
    truth: list[UeTruth]
    paired_errors: list[tuple[float, float, float]]
    degenerate: bool
    wall_time: float
    grid_evals: int
    angle_nmse: float = float("nan")
    distance_nmse: float = float("nan")
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.degenerate or self.error is not None

    @classmethod
    def from_estimates(cls, method, estimates, truth, degenerate, wall_time, grid_evals):
        pairing = pair_estimates(estimates, truth)
        errs = [(estimates[i].azimuth - t.azimuth, estimates[i].elevation - t.elevation,
                 estimates[i].range - t.range) for i, t in zip(pairing, truth)]
        a, d = nmse(estimates, truth, pairing)
        return cls(method, list(estimates), list(truth), errs, degenerate, wall_time,
                   grid_evals, a, d)


@dataclass
class NmseReport:
    """Mean NMSE per method and sweep point; failed trials are excluded from
    the means and counted in ``failure_count``."""

    sweep_axis: str
    sweep_values: list
    methods: list[str]
    angle_nmse: dict[str, list[float]]
    distance_nmse: dict[str, list[float]]
    trial_count: int
    failure_count: dict[str, list[int]]
    mean_wall_time: dict[str, list[float]] = field(default_factory=dict)
    scenario: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.trial_count < 1:
            raise ValueError("trial_count must be positive")

    def rows(self):
        for i, v in enumerate(self.sweep_values):
            for m in self.methods:
                yield {"sweep_axis": self.sweep_axis, "value": v, "method": m,
                       "angle_nmse": self.angle_nmse[m][i],
                       "distance_nmse": self.distance_nmse[m][i],
                       "trials": self.trial_count, "failures": self.failure_count[m][i]}

    def to_dict(self, include_timing: bool = True) -> dict:
        """Plain-data form; timings are the only non-reproducible part."""
        out = {"sweep_axis": self.sweep_axis, "sweep_values": list(self.sweep_values),
               "methods": list(self.methods), "angle_nmse": self.angle_nmse,
               "distance_nmse": self.distance_nmse, "trial_count": self.trial_count,
               "failure_count": self.failure_count, "scenario": self.scenario,
               "seed": self.seed}
        if include_timing:
            out["mean_wall_time"] = self.mean_wall_time
        return out
