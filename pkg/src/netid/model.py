"""Network model: a directed simple graph with excited and measured vertex sets.

Vertices are numbered 1..L.  An edge (i, j) means the signal of vertex i
feeds vertex j through an unknown transfer module.  The model is immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


class TopologyError(ValueError):
    """Raised when a topology description violates the model invariants."""


def canonical_vertices(vertices) -> tuple[int, ...]:
    """Sort a vertex collection and drop duplicates (canonical form)."""
    return tuple(sorted(set(vertices)))


@dataclass(frozen=True)
class NetworkModel:
    """Directed simple graph plus the excited set R and measured set C.

    Attributes:
        vertex_count: number of internal vertices L.
        edges: ordered pairs (from, to), sorted lexicographically.
        excited: vertices driven by an external excitation signal, ascending.
        measured: vertices whose signal is observed, ascending.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    excited: tuple[int, ...]
    measured: tuple[int, ...]
    _succ: dict[int, tuple[int, ...]] = field(
        init=False, repr=False, compare=False, hash=False, default=None
    )
    _pred: dict[int, tuple[int, ...]] = field(
        init=False, repr=False, compare=False, hash=False, default=None
    )

    def __post_init__(self):
        if self.vertex_count < 1:
            raise TopologyError("vertex count must be a positive integer")
        seen = set()
        for edge in self.edges:
            i, j = edge
            if not (1 <= i <= self.vertex_count and 1 <= j <= self.vertex_count):
                raise TopologyError(f"edge {edge}: vertex index out of range 1..{self.vertex_count}")
            if i == j:
                raise TopologyError(f"edge {edge}: self-loops are not allowed")
            if edge in seen:
                raise TopologyError(f"duplicate edge {edge}")
            seen.add(edge)
        for name, vertices in (("excited", self.excited), ("measured", self.measured)):
            for v in vertices:
                if not (1 <= v <= self.vertex_count):
                    raise TopologyError(f"{name} vertex {v} out of range 1..{self.vertex_count}")
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "excited", canonical_vertices(self.excited))
        object.__setattr__(self, "measured", canonical_vertices(self.measured))
        succ: dict[int, list[int]] = {v: [] for v in self.vertices()}
        pred: dict[int, list[int]] = {v: [] for v in self.vertices()}
        for i, j in self.edges:
            succ[i].append(j)
            pred[j].append(i)
        object.__setattr__(self, "_succ", {v: tuple(sorted(s)) for v, s in succ.items()})
        object.__setattr__(self, "_pred", {v: tuple(sorted(p)) for v, p in pred.items()})

    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def _check_vertex(self, i: int) -> None:
        if not (1 <= i <= self.vertex_count):
            raise TopologyError(f"vertex {i} out of range 1..{self.vertex_count}")


def in_neighbours(model: NetworkModel, i: int) -> tuple[int, ...]:
    """Vertices j with an edge (j, i), ascending."""
    model._check_vertex(i)
    return model._pred[i]


def out_neighbours(model: NetworkModel, i: int) -> tuple[int, ...]:
    """Vertices j with an edge (i, j), ascending."""
    model._check_vertex(i)
    return model._succ[i]


def parse_network(text: str) -> NetworkModel:
    """Parse the JSON topology format into a validated model.

    The expected document is
    ``{"vertices": L, "edges": [[from, to], ...], "excited": [...], "measured": [...]}``.

    Raises:
        TopologyError: malformed JSON, bad field types, self-loop, duplicate
            edge, or an index outside 1..L; the message states which.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TopologyError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise TopologyError("topology document must be a JSON object")
    for key in ("vertices", "edges", "excited", "measured"):
        if key not in doc:
            raise TopologyError(f"missing field '{key}'")
    vertices = doc["vertices"]
    if not isinstance(vertices, int) or isinstance(vertices, bool):
        raise TopologyError("'vertices' must be an integer")
    edges = []
    if not isinstance(doc["edges"], list):
        raise TopologyError("'edges' must be an array of [from, to] pairs")
    for raw in doc["edges"]:
        if (
            not isinstance(raw, list)
            or len(raw) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in raw)
        ):
            raise TopologyError(f"edge entry {raw!r} is not a pair of integers")
        edges.append((raw[0], raw[1]))
    for key in ("excited", "measured"):
        if not isinstance(doc[key], list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in doc[key]
        ):
            raise TopologyError(f"'{key}' must be an array of integers")
    return NetworkModel(
        vertex_count=vertices,
        edges=tuple(edges),
        excited=tuple(doc["excited"]),
        measured=tuple(doc["measured"]),
    )


def serialize(model: NetworkModel, indent: int | None = None) -> str:
    """Serialize a model back to the JSON topology format (canonical order)."""
    doc = {
        "vertices": model.vertex_count,
        "edges": [list(e) for e in model.edges],
        "excited": list(model.excited),
        "measured": list(model.measured),
    }
    return json.dumps(doc, indent=indent)
