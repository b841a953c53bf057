"""Command-line entry point: ``nlflow {simulate,compare,threshold,convergence}``.

Exit status 0 on success, 2 for bad input (config, options, incompatible
models), 3 when a simulation diverges.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import sys
import time
import warnings
from fractions import Fraction
from pathlib import Path

from . import __version__
from .analysis import exact_lwr_solution, run_many, shock_refinement_study, with_dx
from .config import ConfigError, config_to_dict, load_config
from .diagnostics import Side, front_position, max_gradient
from .errors import AnalysisError, NlflowError, SimulationDiverged
from .kernel import discretize
from .solver import run
from .threshold import assess


EXIT_OK, EXIT_USAGE, EXIT_DIVERGED = 0, 2, 3


def _fmt(v: float | None) -> str:
    if v is None:
        return ""
    return repr(float(v))


def _time_tag(t: float) -> str:
    return repr(float(t))


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _gnuplot_script(files: list[str]) -> str:
    plots = ", \\\n     ".join(f"'{f}' using 1:2 with lines title '{f[:-4]}'" for f in files)
    return ("set datafile separator ','\nset key autotitle columnhead\n"
            "set xlabel 'x'\nset ylabel 'u'\n" f"plot {plots}\n")


def cmd_simulate(args) -> int:
    config = load_config(args.config)
    start = time.perf_counter()
    result = run(config)
    wall = time.perf_counter() - start

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written: list[str] = []
    x = config.grid.x
    for snap in result.snapshots:
        name = f"t_{_time_tag(snap.t)}.csv"
        _write_csv(out / name, ["x", "u"], ((_fmt(a), _fmt(b)) for a, b in zip(x, snap.field.values)))
        written.append(name)
    _write_csv(out / "diagnostics.csv", ["t", "mass", "u_min", "u_max", "max_grad"],
               ((_fmt(d.t), _fmt(d.mass), _fmt(d.u_min), _fmt(d.u_max), _fmt(d.max_grad))
                for d in result.diagnostics))
    written.append("diagnostics.csv")
    if args.gnuplot:
        (out / "plot.gp").write_text(_gnuplot_script(written[:-1]), encoding="utf-8")
        written.append("plot.gp")
    written.append("manifest.json")
    manifest = {
        "config": config_to_dict(config),
        "tool_version": __version__,
        "wall_time": wall,
        "steps_taken": result.steps_taken,
        "output_files": written,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(written)} files to {out} ({result.steps_taken} steps)")
    return EXIT_OK


def cmd_compare(args) -> int:
    if len(args.config) < 2:
        raise ConfigError("compare needs at least two --config files")
    configs = [load_config(p) for p in args.config]
    base = configs[0]
    for path, c in zip(args.config[1:], configs[1:]):
        if c.grid != base.grid:
            raise ConfigError(f"{path}: grid differs from {args.config[0]}")
        if c.scenario != base.scenario:
            raise ConfigError(f"{path}: scenario differs from {args.config[0]}")
    configs = [dataclasses.replace(c, t_end=args.t, snapshot_times=()) for c in configs]

    labels: list[str] = []
    for c in configs:
        label = c.model.label
        while label in labels:
            label += "_"
        labels.append(label)
    fields = run_many(configs)
    for f in fields:
        if isinstance(f, NlflowError):
            raise f

    x = base.grid.x
    rows = zip(x, *(f.values for f in fields))
    _write_csv(Path(args.out), ["x"] + [f"u_{lab}" for lab in labels],
               ([_fmt(v) for v in row] for row in rows))
    print(f"t={_fmt(args.t)}")
    print(f"level={_fmt(args.level)}")
    for label, f in zip(labels, fields):
        try:
            front = _fmt(front_position(f, args.level, Side.LEADING))
        except AnalysisError:
            front = "nan"
        print(f"front[{label}]={front}")
        print(f"max_grad[{label}]={_fmt(max_gradient(f))}")
    return EXIT_OK


def cmd_threshold(args) -> int:
    config = load_config(args.config)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            report = assess(config, args.kind)
        except NlflowError as exc:
            raise ConfigError(str(exc)) from exc
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    print("\n".join(report.as_lines()))
    return EXIT_OK


def _parse_dx_list(text: str) -> list[float]:
    out = []
    for item in text.split(","):
        item = item.strip()
        try:
            out.append(float(Fraction(item)))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"bad dx value {item!r}") from None
    return out


def cmd_convergence(args) -> int:
    config = load_config(args.config)
    dx_list = _parse_dx_list(args.dx)
    for dx in dx_list:
        try:
            c = with_dx(config, dx, args.t)
            for k in (c.model.kernel_a, c.model.kernel_b):
                if k is not None:
                    discretize(k, dx)
        except NlflowError as exc:
            raise ConfigError(f"dx={dx!r}: {exc}") from exc
    study = shock_refinement_study(config, dx_list, args.t,
                                   exact_lwr_solution(config.scenario, config.model))
    cls = study.classification.value
    _write_csv(Path(args.out), ["dx", "l1_error", "max_grad", "class"],
               ((_fmt(r.dx), _fmt(r.l1_error), _fmt(r.max_grad), cls) for r in study.rows))
    for r in study.rows:
        if r.error:
            print(f"row dx={_fmt(r.dx)} failed: {r.error}", file=sys.stderr)
    print(f"growth_per_halving={_fmt(study.growth_per_halving)}")
    print(f"class={cls}")
    if all(r.error for r in study.rows):
        return EXIT_DIVERGED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nlflow", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="run one configuration and write snapshot CSVs")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--gnuplot", action="store_true", help="also write a plot.gp script")
    s.set_defaults(func=cmd_simulate)

    c = sub.add_parser("compare", help="run several models on one grid and scenario")
    c.add_argument("--config", action="append", required=True)
    c.add_argument("--t", type=float, required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--level", type=float, default=0.1, help="density level for the front position")
    c.set_defaults(func=cmd_compare)

    t = sub.add_parser("threshold", help="evaluate a blow-up criterion on the initial data")
    t.add_argument("--config", required=True)
    t.add_argument("--kind", required=True, choices=["const_ab", "lin_ab", "const_a"])
    t.set_defaults(func=cmd_threshold)

    v = sub.add_parser("convergence", help="grid-refinement shock study")
    v.add_argument("--config", required=True)
    v.add_argument("--dx", required=True, help="comma-separated, coarse to fine, e.g. 1/50,1/100,1/200")
    v.add_argument("--t", type=float, required=True)
    v.add_argument("--out", required=True)
    v.set_defaults(func=cmd_convergence)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SimulationDiverged as exc:
        print(f"error: simulation diverged at t={exc.t!r}, step {exc.step}: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except NlflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
