"""Search-grid descriptions shared by the scenario and the estimators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import RisGeometry


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid of ``num`` points from ``start`` to ``stop`` inclusive."""

    start: float
    stop: float
    num: int

    def __post_init__(self):
        if self.num < 1:
            raise ValueError("grid needs at least one point")
        if self.num > 1 and not self.stop > self.start:
            raise ValueError(f"grid stop {self.stop} must exceed start {self.start}")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.num)

    @property
    def step(self) -> float:
        return (self.stop - self.start) / (self.num - 1) if self.num > 1 else 0.0

    @classmethod
    def angle_deg(cls, step_deg: float = 0.5, limit_deg: float = 90.0) -> "GridSpec":
        """Symmetric angle grid over the open interval (-limit, limit), in radians."""
        half = int(np.ceil(limit_deg / step_deg - 1e-9)) - 1
        return cls(np.deg2rad(-half * step_deg), np.deg2rad(half * step_deg), 2 * half + 1)


@dataclass(frozen=True)
class SearchGrids:
    azimuth: GridSpec
    elevation: GridSpec
    distance: GridSpec

    @classmethod
    def default(cls, geom: RisGeometry) -> "SearchGrids":
        return cls(GridSpec.angle_deg(0.5), GridSpec.angle_deg(0.5),
                   default_distance_grid(geom))

    def with_resolution(self, g: int) -> "SearchGrids":
        """Same bounds, ``g`` points in every dimension."""
        return SearchGrids(*(GridSpec(s.start, s.stop, g)
                             for s in (self.azimuth, self.elevation, self.distance)))


def default_distance_grid(geom: RisGeometry, num: int = 500) -> GridSpec:
    return GridSpec(0.5, max(geom.fraunhofer_distance, 1.0), num)
