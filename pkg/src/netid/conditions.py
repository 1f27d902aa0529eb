"""Necessary-condition checks and the composite analysis report.

Every check is necessary-only: a violation proves the model set cannot be
identified from the observable block, while a clean pass proves nothing
for general topologies.  Pure directed rings are the exception; for them
the definitive ring test is attached to the report.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from . import circular as circ
from .combinatorics import max_matching, max_vertex_disjoint_paths
from .model import NetworkModel, in_neighbours, out_neighbours
from .numeric import (
    DEFAULT_TOLERANCE,
    RemovalRecord,
    draw_instances,
    eliminate_dependent_entries,
    generic_rank,
)
from .structure import bipartite_graph, function_set

VIOLATED = "Violated"
SATISFIED = "Satisfied"
SATISFIED_GENERICALLY = "SatisfiedGenerically"
INCONCLUSIVE = "Inconclusive"

SIGNAL_COVER = "SignalCover"
NEIGHBOURHOOD_RANK = "NeighbourhoodRank"
NAIVE_COUNT = "NaiveCount"
REDUCED_FUNCTION_COUNT = "ReducedFunctionCount"
SINGLE_SIGNAL_COUNT = "SingleSignalCount"
BIPARTITE_EDGE_COUNT = "BipartiteEdgeCount"

NOT_IDENTIFIABLE = "NotIdentifiable"
NO_VIOLATION = "NoNecessaryConditionViolated"

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ConditionResult:
    id: str
    status: str
    witness: dict | None = None
    notes: str = ""


@dataclass(frozen=True)
class EdgeRemovalRecord:
    """One bipartite pruning step and the subset pair that justified it."""

    removed: tuple[int, int]
    excited_subset: tuple[int, ...]
    measured_subset: tuple[int, ...]
    path_count: int
    matching_size: int


@dataclass(frozen=True)
class AnalysisOptions:
    seed: int = 42
    trials: int = 5
    tolerance: float = DEFAULT_TOLERANCE
    max_subset: int | None = None


@dataclass(frozen=True)
class AnalysisReport:
    model: NetworkModel
    conditions: tuple[ConditionResult, ...]
    elimination_log: tuple[RemovalRecord, ...]
    edge_removal_log: tuple[EdgeRemovalRecord, ...]
    circular: dict | None
    verdict: str

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "model": {
                "vertices": self.model.vertex_count,
                "edges": [list(e) for e in self.model.edges],
                "excited": list(self.model.excited),
                "measured": list(self.model.measured),
            },
            "conditions": [
                {
                    "id": c.id,
                    "status": c.status,
                    "witness": c.witness,
                    "notes": c.notes,
                }
                for c in self.conditions
            ],
            "elimination_log": [
                {
                    "entry": list(r.entry),
                    "measured_subset": list(r.measured_subset),
                    "excited_subset": list(r.excited_subset),
                }
                for r in self.elimination_log
            ],
            "edge_removal_log": [
                {
                    "removed": list(r.removed),
                    "excited_subset": list(r.excited_subset),
                    "measured_subset": list(r.measured_subset),
                    "path_count": r.path_count,
                    "matching_size": r.matching_size,
                }
                for r in self.edge_removal_log
            ],
            "circular": self.circular,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def check_cover(model: NetworkModel) -> ConditionResult:
    """Every vertex must be excited or measured."""
    uncovered = sorted(
        set(model.vertices()) - set(model.excited) - set(model.measured)
    )
    if uncovered:
        return ConditionResult(
            id=SIGNAL_COVER,
            status=VIOLATED,
            witness={"uncovered": uncovered},
            notes="vertices neither excited nor measured",
        )
    return ConditionResult(id=SIGNAL_COVER, status=SATISFIED)


def check_rank_conditions(
    model: NetworkModel,
    trials: int = 5,
    seed: int = 42,
    tolerance: float = DEFAULT_TOLERANCE,
) -> ConditionResult:
    """Full-rank requirements on neighbourhood blocks of T.

    For each vertex, the block of T with rows at its in-neighbours and
    columns at the excited set must have full row rank, and the block with
    rows at the measured set and columns at its out-neighbours full column
    rank.  The disjoint-path bound caps the rank for every parameter
    value, so a short bound is a definitive violation; when all bounds are
    met the ranks are confirmed at generic points only.
    """
    failures = []
    for i in model.vertices():
        incoming = in_neighbours(model, i)
        bound = max_vertex_disjoint_paths(model, model.excited, incoming)
        if bound < len(incoming):
            failures.append(
                {"vertex": i, "side": "in", "bound": bound, "required": len(incoming)}
            )
        outgoing = out_neighbours(model, i)
        bound = max_vertex_disjoint_paths(model, outgoing, model.measured)
        if bound < len(outgoing):
            failures.append(
                {"vertex": i, "side": "out", "bound": bound, "required": len(outgoing)}
            )
    if failures:
        return ConditionResult(
            id=NEIGHBOURHOOD_RANK,
            status=VIOLATED,
            witness={"failures": failures},
            notes="path bound below neighbourhood size for all parameter values",
        )
    instances = draw_instances(model, trials, seed)
    for i in model.vertices():
        incoming = in_neighbours(model, i)
        if incoming:
            generic_rank(
                model, rows=incoming, cols=model.excited,
                tolerance=tolerance, instances=instances,
            )
        outgoing = out_neighbours(model, i)
        if outgoing:
            generic_rank(
                model, rows=model.measured, cols=outgoing,
                tolerance=tolerance, instances=instances,
            )
    return ConditionResult(id=NEIGHBOURHOOD_RANK, status=SATISFIED_GENERICALLY)


def check_naive_count(model: NetworkModel) -> ConditionResult:
    """The observable block needs at least as many informative entries as edges."""
    count = len(function_set(model))
    witness = {"nonconstant": count, "edges": len(model.edges)}
    if count < len(model.edges):
        return ConditionResult(
            id=NAIVE_COUNT,
            status=VIOLATED,
            witness=witness,
            notes="fewer informative entries than unknown modules",
        )
    return ConditionResult(id=NAIVE_COUNT, status=SATISFIED, witness=witness)


def check_single_signal_count(model: NetworkModel) -> ConditionResult:
    """Count comparison when one side has a single signal.

    With one excited or one measured vertex no informative entry can
    depend on the others, so the raw count is compared directly.
    """
    count = len(function_set(model))
    witness = {"nonconstant": count, "edges": len(model.edges)}
    if count < len(model.edges):
        return ConditionResult(
            id=SINGLE_SIGNAL_COUNT,
            status=VIOLATED,
            witness=witness,
            notes="single-signal side: entry count below edge count",
        )
    return ConditionResult(id=SINGLE_SIGNAL_COUNT, status=SATISFIED, witness=witness)


def check_reduced_count(
    model: NetworkModel,
    trials: int = 5,
    seed: int = 42,
    max_subset: int | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> tuple[ConditionResult, tuple[RemovalRecord, ...]]:
    """Entry count after eliminating dependent entries must reach the edge count."""
    if len(model.excited) < 2 or len(model.measured) < 2:
        return check_single_signal_count(model), ()
    reduced, log = eliminate_dependent_entries(
        model, trials=trials, seed=seed, max_subset=max_subset, tolerance=tolerance
    )
    truncated = (
        max_subset is not None
        and max_subset < min(len(model.excited), len(model.measured))
    )
    notes = "subset search truncated; violations remain valid" if truncated else ""
    witness = {
        "independent": len(reduced),
        "edges": len(model.edges),
        "removed": [list(r.entry) for r in log],
    }
    if len(reduced) < len(model.edges):
        return (
            ConditionResult(
                id=REDUCED_FUNCTION_COUNT,
                status=VIOLATED,
                witness=witness,
                notes=notes or "independent entries below edge count",
            ),
            tuple(log),
        )
    return (
        ConditionResult(
            id=REDUCED_FUNCTION_COUNT, status=SATISFIED, witness=witness, notes=notes
        ),
        tuple(log),
    )


def prune_bipartite_edges(
    model: NetworkModel,
) -> tuple[tuple[tuple[int, int], ...], tuple[EdgeRemovalRecord, ...]]:
    """Single-pass pruning of the bipartite graph of the observable block.

    Scans square subset pairs by ascending size (excited outer, measured
    inner, lexicographic).  A pair whose disjoint-path count falls short of
    a full matching certifies a dependency among its entries; unless all
    its edges were booked by earlier hits, the pair books them and the
    lexicographically smallest still-present edge between the subsets is
    removed.  Matchings and path counts always refer to the original
    graph.  Returns the surviving edges and the removal log.
    """
    bip = bipartite_graph(model)
    excited, measured = bip.left, bip.right
    present = set(bip.edges)
    log: list[EdgeRemovalRecord] = []
    limit = min(len(excited), len(measured))
    if limit < 2:
        return tuple(sorted(present)), ()
    booked: set[tuple[int, int]] = set()
    for k in range(2, limit + 1):
        for cols in itertools.combinations(excited, k):
            for rows in itertools.combinations(measured, k):
                between = bip.edges_between(cols, rows)
                if not set(between) - booked:
                    continue
                matching = max_matching(bip, rows=rows, cols=cols)
                if len(matching) != k:
                    continue
                paths = max_vertex_disjoint_paths(model, cols, rows)
                if paths >= k:
                    continue
                booked.update(between)
                removed = min(e for e in between if e in present)
                present.discard(removed)
                log.append(
                    EdgeRemovalRecord(
                        removed=removed,
                        excited_subset=cols,
                        measured_subset=rows,
                        path_count=paths,
                        matching_size=k,
                    )
                )
    return tuple(sorted(present)), tuple(log)


def check_bipartite_count(
    model: NetworkModel,
) -> tuple[ConditionResult, tuple[EdgeRemovalRecord, ...]]:
    """Surviving bipartite edges after pruning must reach the edge count.

    On a pure directed ring the definitive ring test is authoritative: if
    pruning undercounts on a ring the ring test proves identifiable, the
    verdict is reported as Inconclusive instead of Violated, because the
    single-pass booking can double-count dependencies that higher-order
    subset pairs inherit from smaller ones.
    """
    if len(model.excited) < 2 or len(model.measured) < 2:
        return check_single_signal_count(model), ()
    kept, log = prune_bipartite_edges(model)
    witness = {
        "kept": len(kept),
        "edges": len(model.edges),
        "removed": [list(r.removed) for r in log],
    }
    if len(kept) >= len(model.edges):
        return (
            ConditionResult(id=BIPARTITE_EDGE_COUNT, status=SATISFIED, witness=witness),
            log,
        )
    try:
        descriptor = circ.detect_circle(model)
    except circ.NotACircleError:
        descriptor = None
    if descriptor is not None and circ.circular_identifiable(descriptor).identifiable:
        return (
            ConditionResult(
                id=BIPARTITE_EDGE_COUNT,
                status=INCONCLUSIVE,
                witness=witness,
                notes=(
                    "edge pruning undercounts on this ring; the definitive "
                    "ring test proves the model set identifiable"
                ),
            ),
            log,
        )
    return (
        ConditionResult(
            id=BIPARTITE_EDGE_COUNT,
            status=VIOLATED,
            witness=witness,
            notes="surviving bipartite edges below edge count",
        ),
        log,
    )


def analyze(model: NetworkModel, options: AnalysisOptions | None = None) -> AnalysisReport:
    """Run every necessary-condition check and compose the verdict.

    The verdict is NotIdentifiable exactly when some condition is
    violated; otherwise no necessary condition is violated, which for
    general topologies is not a proof of identifiability.  For a pure
    directed ring the definitive ring verdict is attached.
    """
    options = options or AnalysisOptions()
    conditions = [
        check_cover(model),
        check_rank_conditions(
            model, trials=options.trials, seed=options.seed, tolerance=options.tolerance
        ),
        check_naive_count(model),
    ]
    elimination_log: tuple[RemovalRecord, ...] = ()
    edge_removal_log: tuple[EdgeRemovalRecord, ...] = ()
    if len(model.excited) >= 2 and len(model.measured) >= 2:
        reduced_result, elimination_log = check_reduced_count(
            model,
            trials=options.trials,
            seed=options.seed,
            max_subset=options.max_subset,
            tolerance=options.tolerance,
        )
        conditions.append(reduced_result)
        bip_result, edge_removal_log = check_bipartite_count(model)
        conditions.append(bip_result)
    else:
        conditions.append(check_single_signal_count(model))

    circular_info: dict | None = None
    try:
        descriptor = circ.detect_circle(model)
    except circ.NotACircleError:
        descriptor = None
    if descriptor is not None:
        verdict = circ.circular_identifiable(descriptor)
        circular_info = {
            "ring": list(descriptor.order),
            "identifiable": verdict.identifiable,
            "condition": verdict.condition,
            "witness": verdict.witness,
        }

    overall = (
        NOT_IDENTIFIABLE
        if any(c.status == VIOLATED for c in conditions)
        else NO_VIOLATION
    )
    return AnalysisReport(
        model=model,
        conditions=tuple(conditions),
        elimination_log=elimination_log,
        edge_removal_log=edge_removal_log,
        circular=circular_info,
        verdict=overall,
    )


def render_text(report: AnalysisReport) -> str:
    """Human-readable rendering of an analysis report."""
    m = report.model
    lines = [
        f"Network: {m.vertex_count} vertices, {len(m.edges)} edges; "
        f"excited {list(m.excited)}; measured {list(m.measured)}",
        "Conditions:",
    ]
    for c in report.conditions:
        line = f"  {c.id:<22} {c.status}"
        if c.status == VIOLATED and c.witness:
            line += f"  {json.dumps(c.witness)}"
        if c.notes:
            line += f"  ({c.notes})"
        lines.append(line)
    if report.elimination_log:
        removed = ", ".join(
            f"T[{r.entry[0]},{r.entry[1]}]" for r in report.elimination_log
        )
        lines.append(f"Eliminated entries: {removed}")
    if report.edge_removal_log:
        removed = ", ".join(str(r.removed) for r in report.edge_removal_log)
        lines.append(f"Pruned bipartite edges: {removed}")
    if report.circular is not None:
        verdict = "identifiable" if report.circular["identifiable"] else "not identifiable"
        lines.append(
            f"Ring: {verdict} ({report.circular['condition']})"
        )
        witness = report.circular.get("witness")
        if witness and "paths" in witness:
            rendered = ", ".join(
                "->".join(str(v) for v in p) for p in witness["paths"]
            )
            lines.append(f"  disjoint paths: {rendered}")
    lines.append(f"Verdict: {report.verdict}")
    return "\n".join(lines) + "\n"
