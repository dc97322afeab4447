"""Command-line entry point.

Verbs: solve, sweep, taxonomy, atomic, preset, emit.
Exit codes: 0 success, 2 parse error, 3 validation error, 4 unstable
system, 5 solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .config_io import dump_config, parse_config
from .errors import ConfigError, OmcoolError, ParseError, UnstableSystemError
from .presets import get_preset, preset_names
from .results import ResultTable, read_csv, table_to_csv, table_to_svg, write_csv, write_svg
from .sweep import SweepAxis, SweepSpec, default_jobs, run_atomic, run_solve, run_sweep, run_taxonomy

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_UNSTABLE = 4
EXIT_SOLVER = 5


def _parse_axis(spec: str) -> SweepAxis:
    parts = spec.split(":")
    if len(parts) not in (4, 5):
        raise ConfigError(f"bad axis spec {spec!r} (want PATH:MIN:MAX:POINTS[:log])")
    scale = "linear"
    if len(parts) == 5:
        scale = parts[4]
    try:
        return SweepAxis(parts[0], float(parts[1]), float(parts[2]), int(parts[3]), scale)
    except ValueError as exc:
        raise ConfigError(f"bad axis spec {spec!r}: {exc}") from exc


def _parse_range(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"bad range spec {spec!r} (want MIN:MAX:POINTS)")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad range spec {spec!r}: {exc}") from exc
    if n < 1:
        raise ConfigError(f"bad range spec {spec!r}: need at least one point")
    return np.linspace(lo, hi, n) if n > 1 else np.array([lo])


def _write_table(table: ResultTable, out: str | None, fmt: str) -> None:
    if fmt == "svg":
        if out:
            write_svg(table, out)
        else:
            sys.stdout.write(table_to_svg(table))
    else:
        if out:
            write_csv(table, out)
        else:
            sys.stdout.write(table_to_csv(table))


def _cmd_solve(args) -> int:
    config = parse_config(args.config)
    table = run_solve(config)
    _write_table(table, args.out, args.format)
    if table.rows and table.rows[0][table.columns.index("stable")] is False:
        return EXIT_UNSTABLE
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = parse_config(args.config)
    axes = tuple(_parse_axis(spec) for spec in args.axis)
    spec = SweepSpec(base=config, axes=axes)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    try:
        table = run_sweep(spec, parallelism=jobs)
    except OmcoolError as exc:
        partial = getattr(exc, "partial", None)
        if partial is not None and args.out:
            write_csv(partial, args.out)
        print(f"error: sweep aborted: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    _write_table(table, args.out, args.format)
    return EXIT_OK


def _cmd_taxonomy(args) -> int:
    config = parse_config(args.config)
    kappas = _parse_range(args.kappa) if args.kappa else None
    table = run_taxonomy(config, kappas)
    _write_table(table, args.out, args.format)
    return EXIT_OK


def _cmd_atomic(args) -> int:
    table = run_atomic(args.levels, _parse_range(args.ratio))
    _write_table(table, args.out, args.format)
    return EXIT_OK


def _cmd_preset(args) -> int:
    preset = get_preset(args.name, points=args.points)
    if args.dump:
        if preset.config is not None:
            text = dump_config(preset.config)
        else:
            text = json.dumps(
                {"atomic": {"levels": preset.atomic_levels,
                            "ratio": list(preset.atomic_ratio),
                            "points": preset.points}},
                indent=2, sort_keys=True) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK

    jobs = args.jobs if args.jobs is not None else default_jobs()
    if preset.kind == "solve":
        table = run_solve(preset.config)
    elif preset.kind == "sweep":
        table = run_sweep(preset.sweep, parallelism=jobs)
    elif preset.kind == "taxonomy":
        lo, hi = preset.taxonomy_kappa
        table = run_taxonomy(preset.config, np.linspace(lo, hi, preset.points))
        if preset.taxonomy_sizes:
            idx = table.columns.index("closed_channels")
            table.rows = [row for row in table.rows
                          if len(row[idx].split("+")) in preset.taxonomy_sizes]
    else:
        lo, hi = preset.atomic_ratio
        table = run_atomic(preset.atomic_levels, np.linspace(lo, hi, preset.points))
    table.metadata["preset"] = preset.name
    _write_table(table, args.out, args.format)
    return EXIT_OK


def _cmd_emit(args) -> int:
    table = read_csv(args.infile)
    _write_table(table, args.out, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omcool",
        description="Steady-state cooling analysis for linearized optomechanical networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "svg"), default="csv")

    p = sub.add_parser("solve", help="one-shot solve of a config document")
    p.add_argument("--config", required=True)
    add_output(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("sweep", help="parameter sweep over a 1D or 2D grid")
    p.add_argument("--config", required=True)
    p.add_argument("--axis", action="append", required=True,
                   metavar="PATH:MIN:MAX:POINTS[:log]")
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: $OMCOOL_JOBS or 1)")
    add_output(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("taxonomy", help="evaluate the 14 coupling configurations")
    p.add_argument("--config", required=True)
    p.add_argument("--kappa", metavar="MIN:MAX:POINTS",
                   help="sweep the intermediate-cavity decay per configuration")
    add_output(p)
    p.set_defaults(func=_cmd_taxonomy)

    p = sub.add_parser("atomic", help="three-/four-level eigenanalysis over a ratio grid")
    p.add_argument("--levels", type=int, choices=(3, 4), required=True)
    p.add_argument("--ratio", required=True, metavar="MIN:MAX:POINTS")
    add_output(p)
    p.set_defaults(func=_cmd_atomic)

    p = sub.add_parser("preset", help="dump or run a named figure/table preset")
    p.add_argument("name", choices=preset_names())
    group = p.add_mutually_exclusive_group()
    group.add_argument("--dump", action="store_true", help="emit the preset config as JSON")
    group.add_argument("--run", action="store_true", help="run the preset (default)")
    p.add_argument("--points", type=int, default=None, help="grid points per axis")
    p.add_argument("--jobs", type=int, default=None)
    add_output(p)
    p.set_defaults(func=_cmd_preset)

    p = sub.add_parser("emit", help="re-emit a saved result table as CSV or SVG")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "svg"), required=True)
    p.set_defaults(func=_cmd_emit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except UnstableSystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE
    except OmcoolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
