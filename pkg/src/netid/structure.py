"""Structural pattern of T = (I - G)^-1 derived from topology alone.

Off-diagonal entry (j, i) of T is nonzero exactly when a directed path
i -> j exists; the diagonal entry (i, i) equals 1 unless i lies on a
directed cycle.  These facts classify every entry as Zero, ConstantOne or
NonConstant without touching numbers, and induce the function set (the
informative entries of the measured-by-excited block) and its bipartite
graph.
"""

from __future__ import annotations

import enum
import functools
from collections import deque
from dataclasses import dataclass

from .model import NetworkModel, canonical_vertices


class EntryClass(enum.Enum):
    ZERO = "Zero"
    CONSTANT_ONE = "ConstantOne"
    NON_CONSTANT = "NonConstant"


@dataclass(frozen=True)
class StructuralPattern:
    """L x L classification of the entries of T.

    ``grid[j - 1][i - 1]`` classifies entry (j, i), i.e. the response of
    vertex j to an input at vertex i.
    """

    size: int
    grid: tuple[tuple[EntryClass, ...], ...]

    def entry(self, j: int, i: int) -> EntryClass:
        return self.grid[j - 1][i - 1]

    def is_nonzero(self, j: int, i: int) -> bool:
        return self.grid[j - 1][i - 1] is not EntryClass.ZERO


@dataclass(frozen=True)
class FunctionSet:
    """Index pairs (measured, excited) naming nonconstant entries of T_{C,R}."""

    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in set(self.pairs)


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite mirror of the nonzero pattern of T_{C,R}.

    An edge (i, j) with i excited and j measured exists when entry (j, i)
    of T is not structurally zero.  A vertex excited and measured at once
    may carry the edge (i, i).
    """

    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def edges_between(self, cols, rows) -> tuple[tuple[int, int], ...]:
        """Edges with left endpoint in ``cols`` and right endpoint in ``rows``."""
        cset, rset = set(cols), set(rows)
        return tuple(e for e in self.edges if e[0] in cset and e[1] in rset)


def _reachable_from(model: NetworkModel, start: int) -> set[int]:
    """Vertices reachable from ``start`` through at least one edge (BFS)."""
    seen: set[int] = set()
    queue = deque(model._succ[start])
    while queue:
        v = queue.popleft()
        if v in seen:
            continue
        seen.add(v)
        queue.extend(model._succ[v])
    return seen


def _cycle_vertices(model: NetworkModel) -> set[int]:
    """Vertices lying on a directed cycle: members of an SCC of size >= 2.

    Iterative Tarjan; self-loops cannot occur in a valid model, so an SCC
    of size one never contributes a cycle.
    """
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = 0
    result: set[int] = set()

    for root in model.vertices():
        if root in index:
            continue
        work = [(root, iter(model._succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(model._succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                if len(component) >= 2:
                    result.update(component)
    return result


@functools.lru_cache(maxsize=256)
def structural_pattern(model: NetworkModel) -> StructuralPattern:
    """Classify every entry of T from reachability and cycle membership.

    Models are immutable, so results are memoized; repeated analysis steps
    on one model reuse the same pattern object.
    """
    n = model.vertex_count
    reach = {i: _reachable_from(model, i) for i in model.vertices()}
    cyclic = _cycle_vertices(model)
    grid = []
    for j in model.vertices():
        row = []
        for i in model.vertices():
            if i == j:
                row.append(
                    EntryClass.NON_CONSTANT if i in cyclic else EntryClass.CONSTANT_ONE
                )
            else:
                row.append(
                    EntryClass.NON_CONSTANT if j in reach[i] else EntryClass.ZERO
                )
        grid.append(tuple(row))
    return StructuralPattern(size=n, grid=tuple(grid))


def function_set(model: NetworkModel, pattern: StructuralPattern | None = None) -> FunctionSet:
    """Nonconstant entries (measured, excited) of the observable block."""
    pattern = pattern or structural_pattern(model)
    pairs = [
        (j, i)
        for j in model.measured
        for i in model.excited
        if pattern.entry(j, i) is EntryClass.NON_CONSTANT
    ]
    return FunctionSet(pairs=tuple(sorted(pairs)))


def bipartite_graph(model: NetworkModel, pattern: StructuralPattern | None = None) -> BipartiteGraph:
    """Bipartite graph of the nonzero entries of the observable block."""
    pattern = pattern or structural_pattern(model)
    edges = [
        (i, j)
        for i in model.excited
        for j in model.measured
        if pattern.is_nonzero(j, i)
    ]
    return BipartiteGraph(
        left=canonical_vertices(model.excited),
        right=canonical_vertices(model.measured),
        edges=tuple(sorted(edges)),
    )


def to_dot(graph: BipartiteGraph, removed: tuple[tuple[int, int], ...] = ()) -> str:
    """Render the bipartite graph as Graphviz DOT.

    Excited vertices form the left column, measured vertices the right;
    edges in ``removed`` are drawn dashed.
    """
    removed_set = set(removed)
    lines = [
        "digraph bipartite {",
        "  rankdir=LR;",
        '  node [shape=circle, fontname="Helvetica"];',
    ]
    lines.append("  { rank=same;")
    for v in graph.left:
        lines.append(f'    "R{v}" [label="{v}"];')
    lines.append("  }")
    lines.append("  { rank=same;")
    for v in graph.right:
        lines.append(f'    "C{v}" [label="{v}", shape=doublecircle];')
    lines.append("  }")
    for i, j in graph.edges:
        style = " [style=dashed]" if (i, j) in removed_set else ""
        lines.append(f'  "R{i}" -> "C{j}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"
