"""Built-in scenarios mirroring the numerical experiments.

Common settings: half-wavelength spacing, 0.3 m wavelength, -154 dBm noise,
T = 300 samples, Rician factor 2, L = ceil(N/M) DFT configurations and
10 dBm per user.  Signals are synthesized with the Fresnel model, the same
form the estimators assume.
"""

from __future__ import annotations

import copy

from ..simulator import Scenario
from .config import ConfigError, scenario_from_dict

_COMMON = {
    "t_samples": 300,
    "noise_power_dbm": -154.0,
    "rician_factor": 2.0,
    "rng_seed": 1,
    "sim_model": "fresnel",
}


def _ue(az_deg, el_deg, r, p_dbm=10.0):
    return {"azimuth_deg": az_deg, "elevation_deg": el_deg, "range": r, "tx_power_dbm": p_dbm}


PRESETS: dict[str, dict] = {
    "fig2": {
        "geom": {"n_h": 25, "n_v": 25},
        "m_bs": 128,
        "smoothing": [22, 22],
        "ues": [_ue(30, -60, 6.0), _ue(-30, 60, 8.0), _ue(60, -30, 10.0), _ue(-60, 30, 12.0)],
    },
    "fig4": {
        "geom": {"n_h": 7, "n_v": 7},
        "m_bs": 16,
        "smoothing": [6, 6],
        "ues": [_ue(30, -30, 1.5), _ue(-30, 30, 2.0)],
        # 1 degree steps keep the exhaustive 3-D baseline affordable per trial.
        "grids": {"azimuth": {"step_deg": 1.0}, "elevation": {"step_deg": 1.0}},
    },
    "fig5": {
        "geom": {"n_h": 25, "n_v": 25},
        "m_bs": 128,
        "smoothing": [22, 22],
        "ues": [_ue(30, 0, 6.0), _ue(-30, 0, 6.5), _ue(15, 0, 7.0), _ue(-15, 0, 7.5)],
    },
    # Ranges are not given for the end-fire experiment; 4, 6 and 8 m are used.
    "fig6a": {
        "geom": {"n_h": 15, "n_v": 15},
        "m_bs": 128,
        "smoothing": [12, 12],
        "ues": [_ue(11.25, 11.25, 4.0), _ue(30, 30, 6.0), _ue(60, 60, 8.0)],
    },
    "fig6b": {
        "geom": {"n_h": 35, "n_v": 35},
        "m_bs": 128,
        "smoothing": [32, 32],
        "ues": [_ue(11.25, 11.25, 4.0), _ue(30, 30, 6.0), _ue(60, 60, 8.0)],
    },
}


def preset_config(name: str) -> dict:
    try:
        body = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    cfg = copy.deepcopy(_COMMON)
    cfg.update(copy.deepcopy(body))
    cfg["name"] = name
    return cfg


def load_preset(name: str, **overrides) -> Scenario:
    cfg = preset_config(name)
    for key in overrides:
        base = key[:-4] if key.endswith(("_dbm", "_deg", "_rad")) else key
        for variant in (base, base + "_dbm", base + "_deg", base + "_rad"):
            cfg.pop(variant, None)
    cfg.update(overrides)
    return scenario_from_dict(cfg)
