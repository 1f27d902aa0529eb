"""Graph primitives: bipartite matching and vertex-disjoint path counting.

Maximum matching cardinality equals the structural rank of the matching
submatrix; the maximum number of vertex-disjoint paths equals the generic
rank of the corresponding transfer block.  Instances are desk-scale, so
plain augmenting-path algorithms are used throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .model import NetworkModel, canonical_vertices
from .structure import BipartiteGraph


@dataclass(frozen=True)
class Matching:
    """A set of bipartite edges sharing no endpoint on either side."""

    edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.edges)


def max_matching(
    graph: BipartiteGraph,
    rows=None,
    cols=None,
) -> Matching:
    """Maximum-cardinality matching restricted to cols (excited) x rows (measured).

    Kuhn's augmenting-path search over sorted vertex lists, so the returned
    witness is deterministic.  Only the cardinality is contractual; it
    equals the structural rank of the submatrix selected by rows and cols.
    """
    rows = canonical_vertices(graph.right if rows is None else rows)
    cols = canonical_vertices(graph.left if cols is None else cols)
    row_set = set(rows)
    adjacency = {c: [] for c in cols}
    for i, j in graph.edges:
        if i in adjacency and j in row_set:
            adjacency[i].append(j)
    for c in adjacency:
        adjacency[c].sort()

    match_row: dict[int, int] = {}

    def try_augment(c: int, visited: set[int]) -> bool:
        for r in adjacency[c]:
            if r in visited:
                continue
            visited.add(r)
            if r not in match_row or try_augment(match_row[r], visited):
                match_row[r] = c
                return True
        return False

    for c in cols:
        try_augment(c, set())
    edges = tuple(sorted((c, r) for r, c in match_row.items()))
    return Matching(edges=edges)


def _unit_flow_network(model: NetworkModel, sources, targets):
    """Vertex-split unit-capacity flow network.

    Node ids: v_in = 2(v-1), v_out = 2(v-1)+1, super-source 2L,
    super-sink 2L+1.  Every vertex becomes a capacity-one arc
    v_in -> v_out, so an integral flow selects vertex-disjoint paths; a
    vertex that is both a source and a target carries one unit through
    its split arc alone, realizing the length-zero path convention.
    """
    n = model.vertex_count
    source_node, sink_node = 2 * n, 2 * n + 1
    capacity: dict[tuple[int, int], int] = {}
    adjacency: dict[int, list[int]] = {k: [] for k in range(2 * n + 2)}

    def add_arc(u: int, v: int) -> None:
        if (u, v) not in capacity:
            capacity[(u, v)] = 0
            capacity[(v, u)] = capacity.get((v, u), 0)
            adjacency[u].append(v)
            adjacency[v].append(u)
        capacity[(u, v)] += 1

    for v in model.vertices():
        add_arc(2 * (v - 1), 2 * (v - 1) + 1)
    for i, j in model.edges:
        add_arc(2 * (i - 1) + 1, 2 * (j - 1))
    for s in sources:
        add_arc(source_node, 2 * (s - 1))
    for t in targets:
        add_arc(2 * (t - 1) + 1, sink_node)
    for k in adjacency:
        adjacency[k] = sorted(set(adjacency[k]))
    return capacity, adjacency, source_node, sink_node


def _max_flow(capacity, adjacency, source: int, sink: int) -> int:
    """Edmonds-Karp on unit capacities; mutates ``capacity`` to the residual."""
    total = 0
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            u = queue.popleft()
            for v in adjacency[u]:
                if v not in parent and capacity.get((u, v), 0) > 0:
                    parent[v] = u
                    queue.append(v)
        if sink not in parent:
            return total
        v = sink
        while parent[v] is not None:
            u = parent[v]
            capacity[(u, v)] -= 1
            capacity[(v, u)] = capacity.get((v, u), 0) + 1
            v = u
        total += 1


def vertex_disjoint_paths(model: NetworkModel, sources, targets) -> list[list[int]]:
    """A maximum family of mutually vertex-disjoint directed paths.

    Each path runs from a vertex in ``sources`` to a vertex in ``targets``
    and is returned as its vertex sequence; a vertex belonging to both sets
    may appear as a single-vertex path.  Paths share no vertex at all.
    """
    sources = canonical_vertices(sources)
    targets = canonical_vertices(targets)
    for v in tuple(sources) + tuple(targets):
        model._check_vertex(v)
    if not sources or not targets:
        return []
    capacity, adjacency, source_node, sink_node = _unit_flow_network(
        model, sources, targets
    )
    original = dict(capacity)
    _max_flow(capacity, adjacency, source_node, sink_node)

    def flow(u: int, v: int) -> int:
        return original.get((u, v), 0) - capacity.get((u, v), 0)

    paths = []
    for s in sources:
        node = 2 * (s - 1)
        if flow(source_node, node) <= 0:
            continue
        path = []
        while node != sink_node:
            if node % 2 == 0 and flow(node, node + 1) > 0:
                path.append(node // 2 + 1)
                node += 1
                continue
            for nxt in adjacency[node]:
                if nxt != node - 1 and flow(node, nxt) > 0:
                    # consume the arc so shared sinks are not re-walked
                    original[(node, nxt)] -= 1
                    node = nxt
                    break
            else:
                raise AssertionError("flow decomposition lost a unit")
        paths.append(path)
    return paths


def max_vertex_disjoint_paths(model: NetworkModel, sources, targets) -> int:
    """Maximum number of mutually vertex-disjoint paths from sources to targets."""
    return len(vertex_disjoint_paths(model, sources, targets))
