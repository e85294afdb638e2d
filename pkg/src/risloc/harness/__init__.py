from .bench import BenchReport, runtime_compare
from .dispersion import angle_peak_area, half_max_area
from .config import ConfigError, load_scenario, scenario_from_dict, scenario_to_dict
from .export import emit_spectra
from .metrics import NmseReport, TrialResult, nmse, pair_estimates
from .presets import PRESETS, load_preset
from .sweep import run_sweep, run_trial

__all__ = [
    "BenchReport", "ConfigError", "angle_peak_area", "half_max_area", "NmseReport", "PRESETS", "TrialResult", "emit_spectra",
    "load_preset", "load_scenario", "nmse", "pair_estimates", "run_sweep", "run_trial",
    "runtime_compare", "scenario_from_dict", "scenario_to_dict",
]
