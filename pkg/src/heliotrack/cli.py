"""Command-line entry point.

Exit codes: 0 ok, 2 usage or validation error, 3 infeasible or oversized
instance, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import bench, scenario
from .errors import HeliotrackError, ValidationError
from .io import read_knapsack, read_step_function, step_function_to_json, write_step_function
from .mec import emit_schedule, greedy_baseline, solve_mec, solve_mec_unimodal
from .mtm import MTMQuery, solve_mtm
from .oracle import knapsack_to_mec
from .stepfn import as_fraction

log = logging.getLogger("heliotrack")

SEED_ENV = "HELIOTRACK_SEED"


def _print_json(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _default_omega(f, meta, given):
    if given is not None:
        return given
    return int(meta.get("omega", f.extent))


def cmd_solve_mec(args) -> int:
    f, meta = read_step_function(args.input, args.quantum)
    omega = _default_omega(f, meta, args.omega)
    if args.algorithm == "dp":
        sol = solve_mec(f, args.m, omega, verify=args.verify)
    elif args.algorithm == "greedy":
        sol = greedy_baseline(f, args.m, omega)
    else:
        sol = solve_mec_unimodal(f, args.m, omega)
    schedule = emit_schedule(sol.intervals, omega) if args.emit_schedule else None
    _print_json(sol.to_json(schedule, as_float=args.float))
    return 0


def cmd_solve_mtm(args) -> int:
    f, meta = read_step_function(args.input, args.quantum)
    query = MTMQuery(args.u1, args.u2, args.theta_s, _default_omega(f, meta, args.omega))
    sol = solve_mtm(f, query)
    out = sol.to_json()
    if args.float:
        out["l0"] = float(sol.initial_dwell)
        for item in out["intervals"]:
            item["start"], item["end"] = float(as_fraction(item["start"])), float(as_fraction(item["end"]))
    _print_json(out)
    return 0


def _resolve_seed(cli_seed: int) -> int:
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return cli_seed
    try:
        return int(env)
    except ValueError as exc:
        raise ValidationError(f"{SEED_ENV}={env!r} is not an integer") from exc


def cmd_gen(args) -> int:
    base = scenario.params_from_file(args.params) if args.params else scenario.ScenarioParams()
    overrides = {}
    if args.failure_mode:
        overrides["failure_mode"] = args.failure_mode
    seed = _resolve_seed(args.seed)
    if args.count < 1:
        raise ValidationError("--count must be positive")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        data = base.to_json() | overrides | {"seed": seed + i}
        p = scenario.ScenarioParams.from_json(data)
        f = scenario.generate_sca(p) if args.kind == "sca" else scenario.generate_sce(p)
        path = out_dir / f"{args.kind}-{p.seed}.{args.format}"
        write_step_function(path, f, scenario.scenario_meta(p, args.kind, f.extent))
        print(path)
    return 0


def cmd_reduce_kp(args) -> int:
    k = read_knapsack(args.input)
    f, m, omega = knapsack_to_mec(k)
    doc = step_function_to_json(f, {"source": "knapsack", "m": m, "omega": omega})
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    else:
        _print_json(doc)
    return 0


def _scenario_files(directory: Path) -> list[Path]:
    if not directory.is_dir():
        raise ValidationError(f"{directory} is not a directory")
    files = sorted(p for p in directory.iterdir() if p.suffix.lower() in (".json", ".csv"))
    if not files:
        raise ValidationError(f"no scenario files in {directory}")
    return files


def cmd_bench(args) -> int:
    scenarios = []
    for path in _scenario_files(Path(args.scenarios)):
        f, meta = read_step_function(path)
        scenarios.append((path.stem, f, _default_omega(f, meta, args.omega)))
    fractions = args.fractions.split(",") if args.fractions else None
    rows = bench.run_bench(scenarios, args.m_max, fractions, args.sweep)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            bench.write_csv(rows, fh, args.float)
    else:
        bench.write_csv(rows, sys.stdout, args.float)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heliotrack",
        description="Tracking schedules over step-function irradiance profiles.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-mec", help="maximum gain under movement and displacement budgets")
    p.add_argument("--input", required=True)
    p.add_argument("--m", type=int, required=True, help="movement budget")
    p.add_argument("--omega", type=int, help="displacement budget (default: file meta or extent)")
    p.add_argument("--algorithm", choices=["dp", "greedy", "unimodal"], default="dp")
    p.add_argument("--emit-schedule", action="store_true")
    p.add_argument("--quantum", help="quantum in degrees for CSV input")
    p.add_argument("--verify", action="store_true", help="cross-check against the 3D table")
    p.add_argument("--float", action="store_true", help="print decimals instead of p/q")
    p.set_defaults(func=cmd_solve_mec)

    p = sub.add_parser("solve-mtm", help="minimum movements keeping irradiance in a band")
    p.add_argument("--input", required=True)
    p.add_argument("--u1", required=True)
    p.add_argument("--u2", required=True)
    p.add_argument("--theta-s", default="0")
    p.add_argument("--omega", type=int)
    p.add_argument("--quantum")
    p.add_argument("--float", action="store_true")
    p.set_defaults(func=cmd_solve_mtm)

    p = sub.add_parser("gen", help="generate synthetic SCE/SCA scenarios")
    p.add_argument("--seed", type=int, default=0, help=f"base seed ({SEED_ENV} overrides)")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--kind", choices=["sca", "sce"], default="sca")
    p.add_argument("--params", help="JSON file of scenario parameters")
    p.add_argument("--failure-mode", choices=scenario.FAILURE_MODES)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce-kp", help="turn an unbounded knapsack instance into an MEC instance")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce_kp)

    p = sub.add_parser("bench", help="compare DP, greedy and conventional tracking")
    p.add_argument("--scenarios", required=True, help="directory of step-function files")
    p.add_argument("--m-max", type=int, help="largest movement budget (default: omega)")
    p.add_argument("--omega", type=int, help="displacement budget (default: file meta or extent)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--fractions", help="comma-separated fractions of m-max, e.g. 0.75,0.5,0.25")
    group.add_argument("--sweep", action="store_true", help="every budget 1..m-max")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument("--float", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except HeliotrackError as exc:
        print(f"heliotrack: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"heliotrack: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
