"""CSV and manifest output."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from ..estimators import EstimationResult, modified_music
from ..simulator import Scenario, generate_snapshots
from ..subspace import ls_recover, sample_covariance
from .config import scenario_to_dict
from .metrics import NmseReport
from .sweep import trial_rng


def _ensure_dir(out_dir) -> Path:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    return out


def _fmt(x) -> str:
    return format(x, ".17g") if isinstance(x, float) else str(x)


def write_rows(path: Path, header: list[str], rows) -> Path:
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([_fmt(v) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def write_truth(path, scn: Scenario) -> Path:
    return write_rows(Path(path), ["user", "azimuth_rad", "elevation_rad", "range_m",
                                   "tx_power_w", "path_loss"],
                      ([i, u.azimuth, u.elevation, u.range, u.tx_power, u.path_loss]
                       for i, u in enumerate(scn.ues)))


def write_estimates(path, result: EstimationResult) -> Path:
    return write_rows(Path(path), ["estimate", "azimuth_rad", "elevation_rad", "range_m",
                                   "spectrum"],
                      ([i, e.azimuth, e.elevation, e.range, e.spectrum_value]
                       for i, e in enumerate(result.estimates)))


def write_manifest(out_dir, command: str, scn: Scenario, seed: int, extra: dict | None = None) -> Path:
    """``run.json``: everything needed to replay an invocation."""
    path = _ensure_dir(out_dir) / "run.json"
    body = {"command": command, "seed": seed, "scenario": scenario_to_dict(scn)}
    body.update(extra or {})
    try:
        path.write_text(json.dumps(_json_safe(body), indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def emit_spectra(scn: Scenario, out_dir, seed: int | None = None) -> list[Path]:
    """Angle spectrum, one distance spectrum per estimate, truth and estimates."""
    out = _ensure_dir(out_dir)
    seed = scn.rng_seed if seed is None else seed
    r_hat = sample_covariance(ls_recover(generate_snapshots(scn, trial_rng(seed, 0, 0))))
    res = modified_music(r_hat, scn)
    files = [res.spectrum.to_csv(out / "angle_spectrum.csv")]
    for i, ds in enumerate(res.distance_spectra):
        files.append(ds.to_csv(out / f"distance_spectrum_{i}.csv"))
    files.append(write_truth(out / "truth.csv", scn))
    files.append(write_estimates(out / "estimates.csv", res))
    files.append(write_manifest(out, "spectrum", scn, seed,
                                {"degenerate": res.degenerate, "grid_evals": res.grid_evals}))
    return files


def write_report(report: NmseReport, out_dir) -> list[Path]:
    out = _ensure_dir(out_dir)
    rows = list(report.rows())
    header = list(rows[0]) if rows else ["sweep_axis", "value", "method"]
    csv_path = write_rows(out / "nmse.csv", header, ([r[h] for h in header] for r in rows))
    json_path = out / "report.json"
    json_path.write_text(json.dumps(_json_safe(report.to_dict(include_timing=False)),
                                    indent=2, sort_keys=True) + "\n")
    return [csv_path, json_path]
