"""Exact identifiability test and module recovery for directed ring networks.

For a graph that is a single directed cycle covering all vertices, the
necessary-and-sufficient test is: every vertex excited or measured, and
either the only excited vertex is also measured, or the only measured
vertex is also excited, or (with at least two of each) two vertex-disjoint
paths run from the excited set to the measured set.  In the identifiable
two-path case every module can be reconstructed from the observable block
numerically, via the loop gain extracted from four of its entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .combinatorics import vertex_disjoint_paths
from .model import NetworkModel

SINGLE_EXCITED_MEASURED = "SingleExcitedMeasured"
SINGLE_MEASURED_EXCITED = "SingleMeasuredExcited"
TWO_DISJOINT_PATHS = "TwoDisjointPaths"
COVER_FAILED = "CoverFailed"
CASE_FAILED = "CaseFailed"

_DIVISION_GUARD = 1e-12


class NotACircleError(ValueError):
    """The graph is not a single directed cycle covering all vertices."""


class DegenerateInstanceError(RuntimeError):
    """A recovery division hit an entry too close to zero; resample."""


@dataclass(frozen=True)
class CircleDescriptor:
    """Ring order v_1 -> v_2 -> ... -> v_L -> v_1 plus signal sets."""

    order: tuple[int, ...]
    excited: tuple[int, ...]
    measured: tuple[int, ...]
    model: NetworkModel

    def ring_edges(self) -> tuple[tuple[int, int], ...]:
        n = len(self.order)
        return tuple(
            (self.order[p], self.order[(p + 1) % n]) for p in range(n)
        )


@dataclass(frozen=True)
class CircularVerdict:
    identifiable: bool
    condition: str
    witness: dict | None = None


@dataclass(frozen=True)
class RecoveryResult:
    """Recovered module per ring edge plus the recovered loop gain."""

    modules: dict[tuple[int, int], float]
    loop_gain: float
    anchor: tuple[int, int, int, int]


def detect_circle(model: NetworkModel) -> CircleDescriptor:
    """Return the ring order if the graph is exactly one directed cycle.

    Raises:
        NotACircleError: some vertex misses degree one in either direction,
            or the cycle fails to cover every vertex.
    """
    n = model.vertex_count
    if n < 2 or len(model.edges) != n:
        raise NotACircleError("a circle needs exactly one edge per vertex, L >= 2")
    for v in model.vertices():
        if len(model._succ[v]) != 1 or len(model._pred[v]) != 1:
            raise NotACircleError(f"vertex {v} does not have in- and out-degree one")
    order = [1]
    current = 1
    for _ in range(n - 1):
        current = model._succ[current][0]
        if current == 1:
            raise NotACircleError("graph splits into more than one cycle")
        order.append(current)
    if model._succ[current][0] != 1:
        raise NotACircleError("graph splits into more than one cycle")
    return CircleDescriptor(
        order=tuple(order),
        excited=model.excited,
        measured=model.measured,
        model=model,
    )


def circular_identifiable(descriptor: CircleDescriptor) -> CircularVerdict:
    """Definitive identifiability verdict for a ring."""
    vertices = set(descriptor.model.vertices())
    excited = set(descriptor.excited)
    measured = set(descriptor.measured)
    uncovered = sorted(vertices - excited - measured)
    if uncovered:
        return CircularVerdict(
            identifiable=False,
            condition=COVER_FAILED,
            witness={"uncovered": uncovered},
        )
    if len(excited) == 1 and excited <= measured:
        return CircularVerdict(identifiable=True, condition=SINGLE_EXCITED_MEASURED)
    if len(measured) == 1 and measured <= excited:
        return CircularVerdict(identifiable=True, condition=SINGLE_MEASURED_EXCITED)
    if len(excited) >= 2 and len(measured) >= 2:
        paths = vertex_disjoint_paths(
            descriptor.model, descriptor.excited, descriptor.measured
        )
        if len(paths) >= 2:
            return CircularVerdict(
                identifiable=True,
                condition=TWO_DISJOINT_PATHS,
                witness={"paths": [list(p) for p in paths[:2]]},
            )
    return CircularVerdict(identifiable=False, condition=CASE_FAILED)


def _safe_divide(numerator: float, denominator: float) -> float:
    if abs(denominator) < _DIVISION_GUARD:
        raise DegenerateInstanceError(
            f"denominator {denominator!r} below tolerance; resample the instance"
        )
    return numerator / denominator


def _loop_gain_anchor(descriptor: CircleDescriptor):
    """Deterministic choice of the four vertices whose entries yield the loop gain.

    Rotating the ring so an excited vertex sits at position 1, the pattern
    needed is a measured vertex at position k, a second excited vertex at
    position i and a measured vertex at position j with 1 <= k < i <= j.
    The lexicographically first (anchor, i, k, j) combination is taken.
    """
    order = descriptor.order
    n = len(order)
    pos = {v: p for p, v in enumerate(order)}
    excited = sorted(descriptor.excited)
    measured = set(descriptor.measured)
    for anchor in excited:
        def rotated(v: int) -> int:
            return (pos[v] - pos[anchor]) % n + 1
        other_excited = sorted(rotated(r) for r in excited if r != anchor)
        measured_pos = sorted(rotated(c) for c in measured)
        for i in other_excited:
            ks = [k for k in measured_pos if k < i]
            js = [j for j in measured_pos if j >= i]
            if ks and js:
                by_pos = {rotated(v): v for v in order}
                return anchor, by_pos[i], by_pos[ks[0]], by_pos[js[0]]
    raise DegenerateInstanceError("no loop-gain anchor; verdict should have failed")


def recover_circle_modules(
    descriptor: CircleDescriptor, t_cr: np.ndarray
) -> RecoveryResult:
    """Reconstruct every ring module from a numeric observable block.

    ``t_cr`` must hold the rows of T at the measured vertices (ascending)
    and the columns at the excited vertices (ascending), taken from one
    generic instance of the ring.  Requires the two-disjoint-path verdict;
    single-signal rings are rejected.

    Raises:
        DegenerateInstanceError: a required entry is numerically too small;
            the caller should instantiate again with a different seed.
    """
    verdict = circular_identifiable(descriptor)
    if not (verdict.identifiable and verdict.condition == TWO_DISJOINT_PATHS):
        raise ValueError(
            "module recovery requires an identifiable ring with two disjoint paths"
        )
    measured = sorted(descriptor.measured)
    excited = sorted(descriptor.excited)
    t_cr = np.asarray(t_cr, dtype=float)
    if t_cr.shape != (len(measured), len(excited)):
        raise ValueError(
            f"observable block must be {len(measured)}x{len(excited)}, got {t_cr.shape}"
        )
    row_of = {c: k for k, c in enumerate(measured)}
    col_of = {r: k for k, r in enumerate(excited)}

    def entry(c: int, r: int) -> float:
        return float(t_cr[row_of[c], col_of[r]])

    anchor, second, k_vertex, j_vertex = _loop_gain_anchor(descriptor)
    loop_gain = _safe_divide(entry(j_vertex, anchor), entry(k_vertex, anchor))
    loop_gain *= _safe_divide(entry(k_vertex, second), entry(j_vertex, second))
    one_minus = 1.0 - loop_gain
    if abs(one_minus) < _DIVISION_GUARD:
        raise DegenerateInstanceError("loop gain too close to one; resample")

    measured_set = set(measured)
    excited_set = set(excited)
    order = descriptor.order
    modules: dict[tuple[int, int], float] = {}
    for p, u in enumerate(order):
        w = order[(p + 1) % len(order)]
        if u in measured_set and w in measured_set:
            s = next(r for r in order if r in excited_set and r != w)
            value = _safe_divide(entry(w, s), entry(u, s))
        elif u in excited_set and w in measured_set:
            value = one_minus * entry(w, u)
        elif u in excited_set and w in excited_set:
            m = next(c for c in order if c in measured_set and c not in (u, w))
            value = _safe_divide(entry(m, u), entry(m, w))
        else:
            value = _safe_divide(loop_gain, one_minus * entry(u, w))
        modules[(u, w)] = value
    return RecoveryResult(
        modules=modules,
        loop_gain=loop_gain,
        anchor=(anchor, second, k_vertex, j_vertex),
    )
