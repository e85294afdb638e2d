"""Command-line entry point: ``risloc {spectrum,sweep,bench,validate}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .harness.bench import expected_evals, runtime_compare
from .harness.config import ConfigError, load_scenario, scenario_to_dict
from .harness.export import emit_spectra, write_manifest, write_report
from .harness.presets import PRESETS, load_preset
from .harness.sweep import METHODS, SWEEP_AXES, run_sweep

log = logging.getLogger("risloc")


def resolve_scenario(ref: str, sim_model: str | None = None):
    """A preset name or a path to a JSON config."""
    scn = load_preset(ref) if ref in PRESETS else load_scenario(ref)
    if sim_model:
        scn = scn.replace(sim_model=sim_model)
    return scn


def _csv_list(text: str, cast=str) -> list:
    return [cast(v) for v in text.split(",") if v.strip()]


def cmd_spectrum(args) -> int:
    scn = resolve_scenario(args.preset, args.sim_model)
    files = emit_spectra(scn, args.out, args.seed)
    for f in files:
        print(f)
    return 0


def cmd_sweep(args) -> int:
    scn = resolve_scenario(args.preset, args.sim_model)
    cast = float if args.axis == "power" else int
    values = _csv_list(args.values, cast)
    report = run_sweep(scn, args.axis, values, args.trials, _csv_list(args.methods),
                       args.seed, args.workers)
    files = write_report(report, args.out)
    write_manifest(args.out, "sweep", scn, report.seed,
                   {"axis": args.axis, "values": values, "trials": args.trials,
                    "methods": report.methods, "mean_wall_time": report.mean_wall_time})
    for row in report.rows():
        print(f"{row['method']:>9} {args.axis}={row['value']:<8} angle_nmse={row['angle_nmse']:.4g} "
              f"distance_nmse={row['distance_nmse']:.4g} failures={row['failures']}/{row['trials']}")
    for f in files:
        print(f)
    return 0


def cmd_bench(args) -> int:
    scn = resolve_scenario(args.preset, args.sim_model)
    rep = runtime_compare(scn, args.grid, args.reps, args.seed)
    body = rep.to_dict()
    body["expected_evals"] = expected_evals(args.grid, scn.k)
    print(json.dumps(body, indent=2))
    if args.out:
        write_manifest(args.out, "bench", scn, scn.rng_seed if args.seed is None else args.seed,
                       {"bench": body})
    return 0


def cmd_validate(args) -> int:
    scn = load_scenario(args.config)
    print(json.dumps(scenario_to_dict(scn), indent=2))
    print(f"ok: N={scn.geom.n} K={scn.k} L={scn.l_subslots} J={scn.j_count}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="risloc", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def scenario_args(sp):
        sp.add_argument("--preset", required=True,
                        help=f"preset name ({', '.join(PRESETS)}) or JSON config path")
        sp.add_argument("--seed", type=int, default=None, help="base seed (default: scenario's)")
        sp.add_argument("--sim-model", choices=["exact", "fresnel"], default=None,
                        help="override the distance model used to synthesize signals")

    sp = sub.add_parser("spectrum", help="write angle/distance spectra for one realization")
    scenario_args(sp)
    sp.add_argument("--out", required=True, type=Path)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("sweep", help="Monte-Carlo NMSE sweep")
    scenario_args(sp)
    sp.add_argument("--axis", choices=SWEEP_AXES, required=True)
    sp.add_argument("--values", required=True, help="comma list: dBm for power, K for num-ues")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--methods", default="modified", help=f"comma list from {','.join(METHODS)}")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", required=True, type=Path)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("bench", help="runtime of modified vs 3-D MUSIC")
    scenario_args(sp)
    sp.add_argument("--grid", type=int, default=90, help="points per dimension")
    sp.add_argument("--reps", type=int, default=3)
    sp.add_argument("--out", type=Path, default=None)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("validate", help="check a scenario config and print it resolved")
    sp.add_argument("--config", required=True, type=Path)
    sp.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
