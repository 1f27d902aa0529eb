"""Model generators: hypothesis strategies and seeded random builders."""

from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from netid.model import NetworkModel


@st.composite
def models(draw, max_vertices: int = 8, min_vertices: int = 1):
    """Random network: vertex count, edge subset, excited and measured sets."""
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    vertices = list(range(1, n + 1))
    excited = draw(st.sets(st.sampled_from(vertices)))
    measured = draw(st.sets(st.sampled_from(vertices)))
    return NetworkModel(
        vertex_count=n,
        edges=tuple(edges),
        excited=tuple(excited),
        measured=tuple(measured),
    )


def random_model(
    rng: random.Random,
    max_vertices: int = 8,
    min_vertices: int = 2,
    density: tuple[float, float] = (0.15, 0.5),
) -> NetworkModel:
    """Seeded random model with edge density drawn from the given range."""
    n = rng.randint(min_vertices, max_vertices)
    p = rng.uniform(*density)
    edges = [
        pair
        for pair in itertools.permutations(range(1, n + 1), 2)
        if rng.random() < p
    ]
    vertices = range(1, n + 1)
    excited = [v for v in vertices if rng.random() < 0.5]
    measured = [v for v in vertices if rng.random() < 0.5]
    if not excited:
        excited = [rng.randint(1, n)]
    if not measured:
        measured = [rng.randint(1, n)]
    return NetworkModel(
        vertex_count=n,
        edges=tuple(edges),
        excited=tuple(excited),
        measured=tuple(measured),
    )


def random_ring(rng: random.Random, length: int) -> tuple[tuple[int, int], ...]:
    """Edge list of the standard ring 1 -> 2 -> ... -> length -> 1."""
    return tuple((v, v % length + 1) for v in range(1, length + 1))
