"""Scenario config files (JSON).

Every Scenario field is a top-level key.  Angles take a ``_deg`` or
``_rad`` suffix, powers a ``_dbm`` suffix or plain watts::

    {
      "name": "fig4",
      "geom": {"n_h": 7, "n_v": 7, "wavelength": 0.3},
      "ues": [{"azimuth_deg": 30, "elevation_deg": -30, "range": 1.5,
               "tx_power_dbm": 10}],
      "m_bs": 16,
      "t_samples": 300,
      "noise_power_dbm": -154,
      "rician_factor": 2,
      "smoothing": [6, 6],
      "grids": {"azimuth": {"step_deg": 1.0}, "elevation": {"step_deg": 1.0},
                "distance": {"start": 0.5, "stop": 10.8, "num": 500}},
      "rng_seed": 1,
      "sim_model": "fresnel"
    }

Omitted keys: ``l_subslots`` defaults to ceil(N/M), element spacing to half a
wavelength, ``path_loss`` to free space, grids to 0.5 degree angle steps and
500 distances up to the Fraunhofer distance.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..geometry import RisGeometry, UeTruth
from ..grids import GridSpec, SearchGrids, default_distance_grid
from ..simulator import Scenario, dbm_to_watts, path_loss


class ConfigError(ValueError):
    pass


def _convert_suffixes(data: Any) -> Any:
    """Rewrite ``x_deg`` to ``x_rad`` and ``x_dbm`` to ``x`` (watts)."""
    if not isinstance(data, dict):
        return data
    out = dict(data)
    for key in list(out):
        if key.endswith("_deg"):
            base = key[:-4]
            if base + "_rad" in out:
                raise ValueError(f"both {key} and {base}_rad given")
            out[base + "_rad"] = float(np.deg2rad(out.pop(key)))
        elif key.endswith("_dbm"):
            base = key[:-4]
            if base in out:
                raise ValueError(f"both {key} and {base} given")
            out[base] = float(dbm_to_watts(out.pop(key)))
    return out


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="before")
    @classmethod
    def _suffixes(cls, data):
        return _convert_suffixes(data)


class GeomConfig(_Model):
    n_h: int
    n_v: int
    wavelength: float = 0.3
    d_h: float | None = None
    d_v: float | None = None

    def build(self) -> RisGeometry:
        half = 0.5 * self.wavelength
        return RisGeometry(self.n_h, self.n_v, self.d_h or half, self.d_v or half, self.wavelength)


class UeConfig(_Model):
    azimuth_rad: float
    elevation_rad: float
    range: float = Field(gt=0)
    tx_power: float = Field(gt=0)
    path_loss: float | None = None

    def build(self, wavelength: float) -> UeTruth:
        eta = self.path_loss if self.path_loss is not None else path_loss(self.range, wavelength)
        return UeTruth(self.azimuth_rad, self.elevation_rad, self.range, self.tx_power, eta)


class AngleGridConfig(_Model):
    start_rad: float | None = None
    stop_rad: float | None = None
    num: int | None = None
    step_rad: float | None = None

    def build(self) -> GridSpec:
        if self.step_rad is not None:
            if any(v is not None for v in (self.start_rad, self.stop_rad, self.num)):
                raise ValueError("give either step or start/stop/num for an angle grid")
            return GridSpec.angle_deg(float(np.rad2deg(self.step_rad)))
        if None in (self.start_rad, self.stop_rad, self.num):
            raise ValueError("angle grid needs start, stop and num (or step)")
        return GridSpec(self.start_rad, self.stop_rad, self.num)


class DistanceGridConfig(_Model):
    start: float = 0.5
    stop: float | None = None
    num: int = 500


class GridsConfig(_Model):
    azimuth: AngleGridConfig | None = None
    elevation: AngleGridConfig | None = None
    distance: DistanceGridConfig | None = None

    def build(self, geom: RisGeometry) -> SearchGrids:
        default = SearchGrids.default(geom)
        dist = default.distance
        if self.distance is not None:
            d = self.distance
            dist = GridSpec(d.start, d.stop if d.stop is not None
                            else default_distance_grid(geom).stop, d.num)
        return SearchGrids(self.azimuth.build() if self.azimuth else default.azimuth,
                           self.elevation.build() if self.elevation else default.elevation,
                           dist)


class ScenarioConfig(_Model):
    name: str = "custom"
    geom: GeomConfig
    ues: list[UeConfig] = Field(min_length=1)
    m_bs: int = Field(ge=1)
    l_subslots: int | None = None
    t_samples: int = Field(default=300, ge=1)
    noise_power: float = Field(ge=0)
    rician_factor: float = Field(default=2.0, ge=0)
    smoothing: tuple[int, int] | int
    grids: GridsConfig | None = None
    rng_seed: int = Field(default=0, ge=0, lt=2**64)
    sim_model: Literal["exact", "fresnel"] = "exact"

    def build(self) -> Scenario:
        geom = self.geom.build()
        sm = self.smoothing if isinstance(self.smoothing, tuple) else (self.smoothing,) * 2
        grids = (self.grids or GridsConfig()).build(geom)
        return Scenario(geom=geom, ues=tuple(u.build(geom.wavelength) for u in self.ues),
                        m_bs=self.m_bs, t_samples=self.t_samples, noise_power=self.noise_power,
                        smoothing=sm, l_subslots=self.l_subslots,
                        rician_factor=self.rician_factor, grids=grids, rng_seed=self.rng_seed,
                        sim_model=self.sim_model, name=self.name)


def scenario_from_dict(data: dict) -> Scenario:
    try:
        return ScenarioConfig.model_validate(data).build()
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    return scenario_from_dict(data)


def _grid_dict(g: GridSpec, angle: bool) -> dict:
    if angle:
        return {"start_rad": g.start, "stop_rad": g.stop, "num": g.num}
    return {"start": g.start, "stop": g.stop, "num": g.num}


def scenario_to_dict(scn: Scenario) -> dict:
    """Fully resolved scenario in SI units; loads back to an equal Scenario."""
    g = scn.geom
    return {
        "name": scn.name,
        "geom": {"n_h": g.n_h, "n_v": g.n_v, "wavelength": g.wavelength,
                 "d_h": g.d_h, "d_v": g.d_v},
        "ues": [{"azimuth_rad": u.azimuth, "elevation_rad": u.elevation, "range": u.range,
                 "tx_power": u.tx_power, "path_loss": u.path_loss} for u in scn.ues],
        "m_bs": scn.m_bs,
        "l_subslots": scn.l_subslots,
        "t_samples": scn.t_samples,
        "noise_power": scn.noise_power,
        "rician_factor": scn.rician_factor,
        "smoothing": list(scn.smoothing),
        "grids": {"azimuth": _grid_dict(scn.grids.azimuth, True),
                  "elevation": _grid_dict(scn.grids.elevation, True),
                  "distance": _grid_dict(scn.grids.distance, False)},
        "rng_seed": scn.rng_seed,
        "sim_model": scn.sim_model,
    }


def config_json_schema() -> dict:
    return ScenarioConfig.model_json_schema()
