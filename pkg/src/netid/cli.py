"""Command-line front end: analyze topologies, test rings, export graphs.

Exit codes: 0 when no necessary condition is violated (or the ring is
identifiable), 1 when the verdict is negative, 2 for usage or I/O
problems, 3 for numeric failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import circular as circ
from .conditions import (
    NO_VIOLATION,
    AnalysisOptions,
    analyze,
    prune_bipartite_edges,
    render_text,
)
from .figures import draw_bipartite, draw_network
from .model import TopologyError, parse_network
from .numeric import NumericError, instantiate
from .structure import bipartite_graph, to_dot

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _load_model(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_network(handle.read())


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", help="JSON topology file")
    parser.add_argument("--seed", type=int, default=42, help="RNG seed (default 42)")
    parser.add_argument(
        "--trials", type=int, default=5, help="independent numeric trials (default 5)"
    )
    parser.add_argument(
        "--tol", type=float, default=1e-8, help="relative rank tolerance (default 1e-8)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netid",
        description="identifiability analysis of dynamic networks "
        "under partial excitation and measurement",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="run all necessary-condition checks")
    _add_common(p_analyze)
    p_analyze.add_argument("--json", action="store_true", help="emit the JSON report")
    p_analyze.add_argument(
        "--max-subset",
        type=int,
        default=None,
        help="cap the subset size searched during elimination (>= 2)",
    )
    p_analyze.add_argument(
        "--figures",
        metavar="DIR",
        default=None,
        help="also render network and bipartite figures into DIR",
    )

    p_circ = sub.add_parser("circular", help="definitive test for a directed ring")
    _add_common(p_circ)
    p_circ.add_argument("--json", action="store_true", help="emit the JSON verdict")
    p_circ.add_argument(
        "--recover",
        action="store_true",
        help="instantiate, recover all modules, and report the worst relative error",
    )

    p_bip = sub.add_parser("bipartite", help="export the bipartite graph")
    p_bip.add_argument("input", help="JSON topology file")
    p_bip.add_argument("--dot", metavar="PATH", default=None, help="write DOT here")
    p_bip.add_argument(
        "--fig", metavar="PATH", default=None, help="render a figure here"
    )
    p_bip.add_argument(
        "--with-removals",
        action="store_true",
        help="mark edges removed by the pruning pass as dashed",
    )
    return parser


def cmd_analyze(args) -> int:
    if args.trials < 1 or args.tol <= 0 or (
        args.max_subset is not None and args.max_subset < 2
    ):
        print("invalid options: need trials >= 1, tol > 0, max-subset >= 2", file=sys.stderr)
        return EXIT_USAGE
    model = _load_model(args.input)
    options = AnalysisOptions(
        seed=args.seed, trials=args.trials, tolerance=args.tol, max_subset=args.max_subset
    )
    report = analyze(model, options)
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(render_text(report))
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
        stem = os.path.splitext(os.path.basename(args.input))[0]
        draw_network(model, os.path.join(args.figures, f"{stem}_network.png"))
        removed = tuple(r.removed for r in report.edge_removal_log)
        draw_bipartite(
            bipartite_graph(model),
            os.path.join(args.figures, f"{stem}_bipartite.png"),
            removed=removed,
        )
    return EXIT_OK if report.verdict == NO_VIOLATION else EXIT_NEGATIVE


def cmd_circular(args) -> int:
    if args.trials < 1 or args.tol <= 0:
        print("invalid options: need trials >= 1 and tol > 0", file=sys.stderr)
        return EXIT_USAGE
    model = _load_model(args.input)
    descriptor = circ.detect_circle(model)
    verdict = circ.circular_identifiable(descriptor)
    payload = {
        "ring": list(descriptor.order),
        "identifiable": verdict.identifiable,
        "condition": verdict.condition,
        "witness": verdict.witness,
    }
    recovery_error = None
    if args.recover and verdict.identifiable:
        if verdict.condition != circ.TWO_DISJOINT_PATHS:
            print(
                "recovery needs the two-disjoint-path case; skipping", file=sys.stderr
            )
        else:
            recovery_error = _recovery_error(descriptor, model, args.seed)
            payload["max_relative_recovery_error"] = recovery_error
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        state = "identifiable" if verdict.identifiable else "not identifiable"
        sys.stdout.write(f"Ring {'->'.join(map(str, descriptor.order))}->{descriptor.order[0]}\n")
        sys.stdout.write(f"Verdict: {state} ({verdict.condition})\n")
        if verdict.witness and "paths" in verdict.witness:
            rendered = ", ".join(
                "->".join(map(str, p)) for p in verdict.witness["paths"]
            )
            sys.stdout.write(f"Disjoint paths: {rendered}\n")
        if recovery_error is not None:
            sys.stdout.write(f"Max relative recovery error: {recovery_error:.3e}\n")
    return EXIT_OK if verdict.identifiable else EXIT_NEGATIVE


def _recovery_error(descriptor, model, seed: int) -> float:
    """Round-trip error of module recovery on a fresh instance."""
    for attempt in range(8):
        instance = instantiate(model, seed + 1000 * attempt)
        rows = [c - 1 for c in sorted(model.measured)]
        cols = [r - 1 for r in sorted(model.excited)]
        block = instance.t[np.ix_(rows, cols)]
        try:
            result = circ.recover_circle_modules(descriptor, block)
        except circ.DegenerateInstanceError:
            continue
        worst = 0.0
        for (i, j), value in result.modules.items():
            truth = instance.g[j - 1, i - 1]
            worst = max(worst, abs(value - truth) / abs(truth))
        return worst
    raise NumericError("recovery kept hitting degenerate instances")


def cmd_bipartite(args) -> int:
    model = _load_model(args.input)
    graph = bipartite_graph(model)
    removed: tuple = ()
    if args.with_removals:
        _, log = prune_bipartite_edges(model)
        removed = tuple(r.removed for r in log)
    wrote = False
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(to_dot(graph, removed=removed))
        wrote = True
    if args.fig:
        draw_bipartite(graph, args.fig, removed=removed)
        wrote = True
    if not wrote:
        sys.stdout.write(to_dot(graph, removed=removed))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": cmd_analyze,
        "circular": cmd_circular,
        "bipartite": cmd_bipartite,
    }
    try:
        return handlers[args.command](args)
    except (OSError, TopologyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except circ.NotACircleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
