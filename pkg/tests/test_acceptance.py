"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the
per-criterion lines).
"""

import itertools
import json
import random
import time

import numpy as np

from netid.circular import (
    TWO_DISJOINT_PATHS,
    DegenerateInstanceError,
    circular_identifiable,
    detect_circle,
    recover_circle_modules,
)
from netid.combinatorics import max_matching, max_vertex_disjoint_paths
from netid.conditions import (
    NOT_IDENTIFIABLE,
    SATISFIED_GENERICALLY,
    VIOLATED,
    AnalysisOptions,
    analyze,
    check_naive_count,
    check_reduced_count,
    prune_bipartite_edges,
)
from netid.model import NetworkModel
from netid.numeric import (
    eliminate_dependent_entries,
    generic_rank,
    instantiate,
    numeric_rank,
)
from netid.structure import (
    BipartiteGraph,
    EntryClass,
    bipartite_graph,
    function_set,
    structural_pattern,
)

from conftest import load_fixture
from oracles import ring_verdict_bruteforce, sprank_bruteforce
from strategies import random_model, random_ring


def _condition(report, cid):
    return next(c for c in report.conditions if c.id == cid)


def test_criterion_01_four_vertex_network():
    started = time.perf_counter()
    model = load_fixture("fig1")
    report = analyze(model)
    naive = _condition(report, "NaiveCount")
    assert naive.status == VIOLATED
    assert naive.witness == {"nonconstant": 3, "edges": 4}
    assert _condition(report, "SignalCover").status == "Satisfied"
    assert _condition(report, "NeighbourhoodRank").status == SATISFIED_GENERICALLY
    assert report.verdict == NOT_IDENTIFIABLE
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    print(f"criterion 1: PASS (count 3 < 4, NotIdentifiable, {elapsed:.3f}s)")


def test_criterion_02_ladder_network():
    started = time.perf_counter()
    model = load_fixture("fig2")
    assert len(function_set(model)) == 10 == len(model.edges)
    reduced, log = eliminate_dependent_entries(model, trials=5, seed=42)
    assert len(log) == 1
    assert log[0].measured_subset == (6, 7, 8)
    assert log[0].excited_subset == (1, 2, 3)
    assert len(reduced) == 9
    report = analyze(model)
    assert report.verdict == NOT_IDENTIFIABLE
    assert _condition(report, "ReducedFunctionCount").status == VIOLATED
    for seed in range(5):
        inst = instantiate(model, seed)
        block = inst.t[np.ix_([5, 6, 7], [0, 1, 2])]
        rank_report = numeric_rank(block, 1e-8)
        assert rank_report.rank == 2
        assert rank_report.gap >= 1e4
    elapsed = time.perf_counter() - started
    assert elapsed < 2.0
    print(f"criterion 2: PASS (one removal, 9 < 10, gap >= 1e4, {elapsed:.3f}s)")


def test_criterion_03_ring_removal_logs():
    model = load_fixture("fig3")
    reduced, log = eliminate_dependent_entries(model, trials=5, seed=42)
    assert [r.entry for r in log] == [(4, 1), (4, 2), (5, 1), (5, 2)]
    assert len(reduced) == 5
    kept, prune_log = prune_bipartite_edges(model)
    assert len(prune_log) == 4
    assert len(kept) == 5
    report = analyze(model)
    assert _condition(report, "ReducedFunctionCount").status == VIOLATED
    assert _condition(report, "BipartiteEdgeCount").status == VIOLATED
    assert report.verdict == NOT_IDENTIFIABLE
    print("criterion 3: PASS (entries [T41,T42,T51,T52], 4 edge removals, 5 kept)")


def test_criterion_04_two_cycle_pattern_and_matching():
    model = load_fixture("fig4")
    pattern = structural_pattern(model)
    z, one, nc = EntryClass.ZERO, EntryClass.CONSTANT_ONE, EntryClass.NON_CONSTANT
    printed = [
        [one, z, z, z],
        [nc, one, z, z],
        [nc, nc, nc, nc],
        [nc, nc, nc, nc],
    ]
    for j in range(1, 5):
        for i in range(1, 5):
            assert pattern.entry(j, i) is printed[j - 1][i - 1], (j, i)
    graph = bipartite_graph(model)
    assert len(max_matching(graph)) == 3
    subset_matching = max_matching(graph, rows=(3, 4), cols=(1, 2))
    assert len(subset_matching) == 2
    assert max_vertex_disjoint_paths(model, (1, 2), (3, 4)) == 1
    print("criterion 4: PASS (pattern exact, matching 3, subset 1 < 2)")


def test_criterion_05_ring_verdicts_exhaustive():
    started = time.perf_counter()
    fig6 = load_fixture("fig6")
    verdict6 = circular_identifiable(detect_circle(fig6))
    assert verdict6.identifiable and verdict6.condition == TWO_DISJOINT_PATHS
    assert len(verdict6.witness["paths"]) == 2
    fig3 = load_fixture("fig3")
    verdict3 = circular_identifiable(detect_circle(fig3))
    assert not verdict3.identifiable

    checked = 0
    for length in range(2, 7):
        edges = random_ring(random.Random(0), length)
        for assignment in itertools.product("RC2", repeat=length):
            excited = tuple(
                v for v, role in zip(range(1, length + 1), assignment) if role in "R2"
            )
            measured = tuple(
                v for v, role in zip(range(1, length + 1), assignment) if role in "C2"
            )
            model = NetworkModel(length, edges, excited, measured)
            verdict = circular_identifiable(detect_circle(model))
            assert verdict.identifiable == ring_verdict_bruteforce(model), (
                length,
                excited,
                measured,
            )
            if length <= 3 and verdict.identifiable:
                assert len(excited) + len(measured) >= length + 1
            checked += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    print(f"criterion 5: PASS ({checked} ring configurations, {elapsed:.2f}s)")


def test_criterion_06_generic_rank_identity():
    started = time.perf_counter()
    rng = random.Random(606)
    for index in range(200):
        model = random_model(rng, max_vertices=8, density=(0.15, 0.5))
        pairs = [(model.measured, model.excited)]
        vertices = list(model.vertices())
        for _ in range(20):
            rows = tuple(sorted(rng.sample(vertices, rng.randint(0, len(vertices)))))
            cols = tuple(sorted(rng.sample(vertices, rng.randint(0, len(vertices)))))
            pairs.append((rows, cols))
        for rows, cols in pairs:
            report = generic_rank(model, rows=rows, cols=cols, trials=5, seed=index)
            assert report.rank == max_vertex_disjoint_paths(model, cols, rows)
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0
    print(f"criterion 6: PASS (200 models x 21 pairs, 0 mismatches, {elapsed:.1f}s)")


def test_criterion_07_structural_rank_identity():
    rng = random.Random(707)
    checked = 0
    for _ in range(100):
        n_rows = rng.randint(1, 6)
        n_cols = rng.randint(1, 6)
        grid = [
            [rng.random() < rng.uniform(0.2, 0.8) for _ in range(n_cols)]
            for _ in range(n_rows)
        ]
        rows = tuple(range(1, n_rows + 1))
        cols = tuple(range(101, 101 + n_cols))
        edges = tuple(
            (cols[c], rows[r])
            for r in range(n_rows)
            for c in range(n_cols)
            if grid[r][c]
        )
        graph = BipartiteGraph(left=cols, right=rows, edges=edges)
        for k in range(1, min(n_rows, n_cols) + 1):
            for row_pick in itertools.combinations(range(n_rows), k):
                for col_pick in itertools.combinations(range(n_cols), k):
                    sub = [[grid[r][c] for c in col_pick] for r in row_pick]
                    matching = max_matching(
                        graph,
                        rows=tuple(rows[r] for r in row_pick),
                        cols=tuple(cols[c] for c in col_pick),
                    )
                    assert len(matching) == sprank_bruteforce(sub)
                    checked += 1
    print(f"criterion 7: PASS ({checked} submatrices, 0 mismatches)")


def test_criterion_08_ring_recovery_round_trip():
    started = time.perf_counter()
    rng = random.Random(808)
    done = 0
    while done < 100:
        length = rng.randint(3, 12)
        excited, measured = [], []
        for v in range(1, length + 1):
            role = rng.choice(("R", "C", "RC"))
            if "R" in role:
                excited.append(v)
            if "C" in role:
                measured.append(v)
        model = NetworkModel(
            length, random_ring(rng, length), tuple(excited), tuple(measured)
        )
        descriptor = detect_circle(model)
        if circular_identifiable(descriptor).condition != TWO_DISJOINT_PATHS:
            continue
        result = None
        instance = None
        for attempt in range(6):
            instance = instantiate(model, rng.randint(0, 10**6) + attempt)
            rows = [c - 1 for c in model.measured]
            cols = [r - 1 for r in model.excited]
            try:
                result = recover_circle_modules(
                    descriptor, instance.t[np.ix_(rows, cols)]
                )
                break
            except DegenerateInstanceError:
                continue
        assert result is not None
        worst = max(
            abs(value - instance.g[j - 1, i - 1]) / abs(instance.g[j - 1, i - 1])
            for (i, j), value in result.modules.items()
        )
        assert worst <= 1e-6
        product = float(np.prod([instance.g[j - 1, i - 1] for i, j in model.edges]))
        assert abs(result.loop_gain - product) <= 1e-9 * abs(product)
        done += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0
    print(f"criterion 8: PASS (100 rings recovered, {elapsed:.1f}s)")


def test_criterion_09_count_implication():
    rng = random.Random(909)
    naive_violations = 0
    for index in range(300):
        model = random_model(rng, max_vertices=6, density=(0.15, 0.5))
        if check_naive_count(model).status != VIOLATED:
            continue
        naive_violations += 1
        result, _ = check_reduced_count(model, trials=3, seed=index)
        assert result.status == VIOLATED, model
    assert naive_violations >= 30
    print(
        f"criterion 9: PASS ({naive_violations} naive violations, "
        "all imply reduced-count violations)"
    )


def test_criterion_10_determinism_across_fixtures():
    options = AnalysisOptions(seed=42, trials=5)
    for name in ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6"):
        model = load_fixture(name)
        first = analyze(model, options).to_json()
        second = analyze(model, options).to_json()
        assert first == second, name
        json.loads(first)
    print("criterion 10: PASS (byte-identical reports on all fixtures)")
