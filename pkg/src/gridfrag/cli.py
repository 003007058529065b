"""Command-line front end: analyze / bounds / simulate / attack / convert.

Every command is deterministic given (input file, flags, seed); output files
are written atomically (temp name, then rename).  Exit codes: 0 success,
2 usage or input error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import attack as attack_mod
from . import bounds as bounds_mod
from . import simulate as simulate_mod
from .graphs import (Grid, GraphError, GraphParseError, parse_edge_list,
                     parse_graph_json, serialize_edge_list, serialize_graph_json)
from .nonbacktracking import build_nonbacktracking_graph
from .spectral import ConvergenceError, leading_eigenpair

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_SCHEME_FLAGS = {
    "eigen-iterative": "eigen_iterative",
    "eigen-single": "eigen_single_shot",
    "trace-greedy": "trace_greedy",
    "random": "random",
    "betweenness": "betweenness",
}


def atomic_write(path: str, text: str) -> None:
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def load_grid(path: str) -> Grid:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return parse_graph_json(text)
    return parse_edge_list(text, indexing="auto")


def parse_p0_grid(spec: str) -> list[float]:
    """Parse 'start:stop:step' (inclusive endpoints within 1e-12) or one value."""
    if ":" not in spec:
        value = float(spec)
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"p0 {value} outside [0,1]")
        return [value]
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"p0 grid must be start:stop:step, got {spec!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0:
        raise ValueError(f"p0 grid step must be positive, got {step}")
    if stop < start:
        raise ValueError("p0 grid stop must be >= start")
    points = []
    i = 0
    while True:
        p = start + i * step
        if p > stop + 1e-12:
            break
        points.append(min(p, stop))
        i += 1
    if not points:
        raise ValueError(f"p0 grid {spec!r} yields no points")
    if points[0] < 0.0 or points[-1] > 1.0:
        raise ValueError(f"p0 grid {spec!r} leaves [0,1]")
    return points


def cmd_analyze(args: argparse.Namespace) -> int:
    grid = load_grid(args.input)
    th = bounds_mod.thresholds(grid)
    nbg = build_nonbacktracking_graph(grid)
    report = {
        "nodes": grid.node_count,
        "edges": grid.edge_count,
        "beta_a": th.beta_a,
        "beta_ae": th.beta_ae,
        "first_threshold": th.first,
        "second_threshold": th.second,
        "modified_nodes": nbg.node_count,
        "modified_arcs": len(nbg.arcs),
    }
    atomic_write(args.output, json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    grid = load_grid(args.input)
    curve = bounds_mod.bound_curve(grid, parse_p0_grid(args.p0))
    atomic_write(args.output, bounds_mod.curve_to_csv(curve))
    return EXIT_OK


def _simulate_point(payload):
    grid, p0, g_index, trials, seed, log_base = payload
    return simulate_mod.point_statistics(grid, p0, g_index, trials, seed, log_base)


def cmd_simulate(args: argparse.Namespace) -> int:
    grid = load_grid(args.input)
    pts = parse_p0_grid(args.p0)
    if args.trials < 1:
        raise ValueError(f"trials must be >= 1, got {args.trials}")
    if args.workers < 1:
        raise ValueError(f"workers must be >= 1, got {args.workers}")
    jobs = [(grid, p0, g, args.trials, args.seed, args.log_base)
            for g, p0 in enumerate(pts)]
    if args.workers == 1 or len(pts) == 1:
        stats = [_simulate_point(job) for job in jobs]
    else:
        # Counter-based substreams make the result independent of scheduling.
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            stats = list(pool.map(_simulate_point, jobs))
    report = simulate_mod.SimulationReport(
        p0_grid=tuple(pts),
        mean_damage=tuple(s[0] for s in stats),
        std_damage=tuple(s[1] for s in stats),
        stderr=tuple(s[2] for s in stats),
        frag_fraction=tuple(s[3] for s in stats),
        trials=args.trials,
        seed=args.seed,
        log_base=args.log_base)
    atomic_write(args.output, simulate_mod.report_to_csv(report))
    return EXIT_OK


def _attack_output_prefix(path: str) -> str:
    root, ext = os.path.splitext(path)
    return root if ext in (".csv", ".json") else path


def cmd_attack(args: argparse.Namespace) -> int:
    grid = load_grid(args.input)
    scheme = _SCHEME_FLAGS[args.scheme]
    if scheme == "eigen_iterative":
        trace = attack_mod.attack_eigen_iterative(grid, args.k)
    elif scheme == "eigen_single_shot":
        trace = attack_mod.attack_eigen_single_shot(grid, args.k)
    elif scheme == "trace_greedy":
        trace = attack_mod.attack_trace_greedy(grid, args.k, args.power)
    elif scheme == "random":
        trace = attack_mod.attack_random(grid, args.k, args.seed)
    else:
        trace = attack_mod.attack_betweenness(grid, args.k,
                                              recompute=args.recompute_betweenness)
    prefix = _attack_output_prefix(args.output)
    atomic_write(prefix + ".csv", attack_mod.trace_to_csv(trace))
    atomic_write(prefix + ".json", attack_mod.trace_to_json(trace))
    return EXIT_OK


def cmd_convert(args: argparse.Namespace) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        grid = parse_graph_json(text)
        target = args.format or "csv"
    else:
        grid = parse_edge_list(text, indexing=args.indexing)
        target = args.format or "json"
    out = serialize_graph_json(grid) if target == "json" else serialize_edge_list(grid)
    atomic_write(args.output, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridfrag",
        description="Spectral fragmentation thresholds, failure bounds, and "
                    "line-removal attacks for power-grid graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", required=True, help="graph file (edge list or JSON)")
        p.add_argument("--output", required=True, help="output file path")

    p = sub.add_parser("analyze", help="eigenvalues, thresholds and sizes as JSON")
    common(p)

    p = sub.add_parser("bounds", help="failure-bound curve as CSV")
    common(p)
    p.add_argument("--p0", required=True,
                   help="grid as start:stop:step (inclusive) or a single value")

    p = sub.add_parser("simulate", help="Monte Carlo damage statistics as CSV")
    common(p)
    p.add_argument("--p0", required=True)
    p.add_argument("--trials", type=int, default=simulate_mod.DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--log-base", choices=("e", "2"), default="e",
                   help="base of the 2*log(N) fragmentation cutoff")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel workers over grid points (output is identical)")

    p = sub.add_parser("attack", help="run a line-removal scheme; writes CSV + JSON")
    common(p)
    p.add_argument("--scheme", required=True, choices=sorted(_SCHEME_FLAGS))
    p.add_argument("-k", type=int, required=True, help="number of lines to remove")
    p.add_argument("--power", type=int, default=attack_mod.DEFAULT_TRACE_POWER,
                   help="even walk length 2r for trace-greedy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--recompute-betweenness", action="store_true",
                   help="re-score betweenness after each removal")
    p.add_argument("--workers", type=int, default=1,
                   help="accepted for symmetry; attack schemes run sequentially")

    p = sub.add_parser("convert", help="edge-list <-> JSON graph conversion")
    common(p)
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="target format (csv = edge-list text); default: the other one")
    p.add_argument("--indexing", choices=("zero-based", "one-based", "auto"),
                   default="auto")
    return parser


_COMMANDS = {
    "analyze": cmd_analyze,
    "bounds": cmd_bounds,
    "simulate": cmd_simulate,
    "attack": cmd_attack,
    "convert": cmd_convert,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConvergenceError as exc:
        print(f"gridfrag: numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (GraphParseError, GraphError, ValueError, OSError) as exc:
        print(f"gridfrag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
