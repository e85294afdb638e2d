"""Monte-Carlo trials and NMSE sweeps."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from ..estimators import modified_music, music_2d_known_elevation, music_3d
from ..simulator import Scenario, dbm_to_watts, generate_snapshots
from ..subspace import ls_recover, sample_covariance
from .config import scenario_to_dict
from .metrics import NmseReport, TrialResult

log = logging.getLogger(__name__)

METHODS = ("modified", "music3d", "music2d")
SWEEP_AXES = ("power", "num-ues")


def trial_rng(base_seed: int, sweep_index: int, trial_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([base_seed, sweep_index, trial_index]))


def estimate(method: str, r_hat: np.ndarray, scn: Scenario):
    if method == "modified":
        return modified_music(r_hat, scn)
    if method == "music3d":
        return music_3d(r_hat, scn.k, scn.grids, scn.geom)
    if method == "music2d":
        return music_2d_known_elevation(r_hat, scn.k, [u.elevation for u in scn.ues],
                                        scn.grids, scn.geom)
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def run_trial(scn: Scenario, methods: Sequence[str], rng: np.random.Generator) -> dict[str, TrialResult]:
    """One realization of channel, symbols and noise, shared by all methods."""
    r_hat = sample_covariance(ls_recover(generate_snapshots(scn, rng)))
    out = {}
    for m in methods:
        t0 = time.perf_counter()
        try:
            res = estimate(m, r_hat, scn)
        except (ValueError, np.linalg.LinAlgError) as exc:
            log.warning("method %s failed: %s", m, exc)
            out[m] = TrialResult(m, [], list(scn.ues), [], False, time.perf_counter() - t0, 0,
                                 error=str(exc))
            continue
        out[m] = TrialResult.from_estimates(m, res.estimates, list(scn.ues), res.degenerate,
                                            time.perf_counter() - t0, res.grid_evals)
    return out


def sweep_scenario(scn: Scenario, axis: str, value) -> Scenario:
    if axis == "power":
        return scn.with_tx_power(float(dbm_to_watts(value)))
    if axis == "num-ues":
        k = int(value)
        if not 1 <= k <= scn.k:
            raise ValueError(f"num-ues {k} outside [1, {scn.k}] for this scenario")
        return scn.replace(ues=scn.ues[:k])
    raise ValueError(f"unknown sweep axis {axis!r}; choose from {SWEEP_AXES}")


def run_sweep(scn: Scenario, axis: str, values: Sequence, trials: int,
              methods: Sequence[str] = ("modified",), seed: int | None = None,
              workers: int = 1) -> NmseReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}; choose from {METHODS}")
    seed = scn.rng_seed if seed is None else seed
    points = [sweep_scenario(scn, axis, v) for v in values]
    angle = {m: [] for m in methods}
    dist = {m: [] for m in methods}
    fails = {m: [] for m in methods}
    wall = {m: [] for m in methods}
    for si, point in enumerate(points):
        jobs = [(point, methods, trial_rng(seed, si, ti)) for ti in range(trials)]
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                results = list(pool.map(lambda j: run_trial(*j), jobs))
        else:
            results = [run_trial(*j) for j in jobs]
        for m in methods:
            ok = [r[m] for r in results if not r[m].failed]
            fails[m].append(trials - len(ok))
            angle[m].append(float(np.mean([r.angle_nmse for r in ok])) if ok else float("nan"))
            dist[m].append(float(np.mean([r.distance_nmse for r in ok])) if ok else float("nan"))
            wall[m].append(float(np.mean([r[m].wall_time for r in results])))
        log.info("%s=%s done: %s", axis, values[si],
                 {m: (angle[m][-1], dist[m][-1]) for m in methods})
    return NmseReport(axis, list(values), list(methods), angle, dist, trials, fails, wall,
                      scenario_to_dict(scn), seed)
