"""Random-instantiation oracle for rank questions about T = (I - G)^-1.

Module values are drawn at a generic point, T is computed by dense
inversion, and ranks are read off singular values.  A rank deficiency that
holds identically in the parameters shows up at every random point, while
a deficiency specific to an unlucky point disappears under the maximum
over independent trials.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .combinatorics import max_vertex_disjoint_paths
from .model import NetworkModel, canonical_vertices
from .structure import EntryClass, FunctionSet, StructuralPattern, structural_pattern

#: 2-norm condition number of (I - G) above which an instance is rescaled.
CONDITION_LIMIT = 1e8
#: Relative singular-value cutoff used when no tolerance is passed.
DEFAULT_TOLERANCE = 1e-8
#: Module values are drawn uniformly from this interval (positive, away from 0).
VALUE_RANGE = (0.25, 1.75)
_MAX_RESCALES = 8


class NumericError(RuntimeError):
    """Base class for failures of the numeric oracle."""


class InstantiationError(NumericError):
    """Could not obtain a well-conditioned instance after rescaling retries."""


class RankMismatchError(NumericError):
    """Numeric generic rank disagrees with the vertex-disjoint-path bound."""


@dataclass(frozen=True)
class NumericInstance:
    """One random real instantiation of all modules and the resulting T.

    ``g[j-1, i-1]`` is nonzero exactly for edges (i, j); ``t`` is the dense
    inverse of (I - g) with structurally zero entries stored as exact
    zeros (the raw inversion residue there is verified to be noise first).
    """

    g: np.ndarray
    t: np.ndarray
    seed: int


@dataclass(frozen=True)
class RankReport:
    """Observed rank plus the singular-value gap backing it.

    ``gap`` is the ratio between the last accepted and the first rejected
    singular value (infinite when nothing was rejected), so a decisive
    rank decision shows a large gap.
    """

    rank: int
    gap: float
    trials: int


def instantiate(
    model: NetworkModel, seed: int, pattern: StructuralPattern | None = None
) -> NumericInstance:
    """Draw one generic instance of the network.

    Each module is drawn independently and uniformly from ``VALUE_RANGE``.
    If (I - g) is singular or has condition number beyond
    ``CONDITION_LIMIT``, g is shrunk by 1 / (2 * spectral-radius bound) and
    checked again, at most 8 times.

    Raises:
        InstantiationError: no acceptable instance after the rescale budget.
    """
    pattern = pattern or structural_pattern(model)
    n = model.vertex_count
    rng = np.random.default_rng(seed)
    g = np.zeros((n, n))
    values = rng.uniform(*VALUE_RANGE, size=len(model.edges))
    for (i, j), value in zip(model.edges, values):
        g[j - 1, i - 1] = value

    zero_mask = np.array(
        [
            [pattern.entry(j, i) is EntryClass.ZERO for i in model.vertices()]
            for j in model.vertices()
        ]
    )
    for _ in range(_MAX_RESCALES + 1):
        t = _try_invert(g, zero_mask)
        if t is not None:
            return NumericInstance(g=g, t=t, seed=seed)
        radius = float(np.max(np.abs(np.linalg.eigvals(g)))) if n else 0.0
        g = g / (2.0 * max(radius, 1.0))
    raise InstantiationError(
        f"no well-conditioned instance for seed {seed} after {_MAX_RESCALES} rescales"
    )


def _try_invert(g: np.ndarray, zero_mask: np.ndarray) -> np.ndarray | None:
    """Invert (I - g) and zero out structural-zero residue, or reject."""
    eye = np.eye(g.shape[0])
    a = eye - g
    singular_values = np.linalg.svd(a, compute_uv=False)
    if singular_values.size and (
        singular_values[-1] <= 0.0
        or singular_values[0] / singular_values[-1] > CONDITION_LIMIT
    ):
        return None
    t = np.linalg.inv(a)
    residue = np.abs(t[zero_mask]) if zero_mask.any() else np.zeros(0)
    if residue.size and residue.max() > 1e-10 * (1.0 + np.abs(t).max()):
        return None
    t = t.copy()
    t[zero_mask] = 0.0
    return t


def draw_instances(
    model: NetworkModel,
    trials: int,
    seed: int,
    pattern: StructuralPattern | None = None,
) -> list[NumericInstance]:
    """Independent instances with derived seeds ``seed + t`` (deterministic)."""
    pattern = pattern or structural_pattern(model)
    return [instantiate(model, seed + t, pattern) for t in range(trials)]


def numeric_rank(matrix: np.ndarray, tolerance: float = DEFAULT_TOLERANCE) -> RankReport:
    """Rank by counting singular values above ``tolerance`` x the largest.

    An empty matrix has rank 0.  Deterministic for a fixed input.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        return RankReport(rank=0, gap=math.inf, trials=1)
    s = np.linalg.svd(matrix, compute_uv=False)
    if s[0] <= 0.0:
        return RankReport(rank=0, gap=math.inf, trials=1)
    rank = int((s > tolerance * s[0]).sum())
    if 0 < rank < s.size and s[rank] > 0.0:
        gap = float(s[rank - 1] / s[rank])
    else:
        gap = math.inf
    return RankReport(rank=rank, gap=gap, trials=1)


def generic_rank(
    model: NetworkModel,
    rows,
    cols,
    trials: int = 5,
    seed: int = 42,
    tolerance: float = DEFAULT_TOLERANCE,
    instances: list[NumericInstance] | None = None,
) -> RankReport:
    """Generic rank of T[rows, cols]: maximum numeric rank over trials.

    ``rows`` select measured-side indices, ``cols`` excited-side ones.  The
    result is cross-checked against the maximum number of vertex-disjoint
    paths from cols to rows, which equals the generic rank exactly; a
    disagreement means the tolerance or conditioning is off.

    Raises:
        RankMismatchError: the two rank routes disagree.
        InstantiationError: propagated from instance drawing.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rows = canonical_vertices(rows)
    cols = canonical_vertices(cols)
    if instances is None:
        instances = draw_instances(model, trials, seed)
    row_idx = [v - 1 for v in rows]
    col_idx = [v - 1 for v in cols]
    best_rank, best_gap = -1, math.inf
    for instance in instances:
        sub = instance.t[np.ix_(row_idx, col_idx)]
        report = numeric_rank(sub, tolerance)
        if report.rank > best_rank:
            best_rank, best_gap = report.rank, report.gap
        elif report.rank == best_rank:
            best_gap = max(best_gap, report.gap)
    bound = max_vertex_disjoint_paths(model, sources=cols, targets=rows)
    if best_rank != bound:
        raise RankMismatchError(
            f"numeric generic rank {best_rank} != path bound {bound} "
            f"for rows {rows}, cols {cols}"
        )
    return RankReport(rank=best_rank, gap=best_gap, trials=len(instances))


@dataclass(frozen=True)
class RemovalRecord:
    """One elimination step: which entry was zeroed and the subsets behind it."""

    entry: tuple[int, int]
    measured_subset: tuple[int, ...]
    excited_subset: tuple[int, ...]


def _submatrix_sprank(nonzero: np.ndarray) -> int:
    """Structural rank of a boolean pattern (Kuhn's matching, tiny inputs)."""
    n_rows, n_cols = nonzero.shape
    match_col: dict[int, int] = {}

    def augment(r: int, visited: set[int]) -> bool:
        for c in range(n_cols):
            if nonzero[r, c] and c not in visited:
                visited.add(c)
                if c not in match_col or augment(match_col[c], visited):
                    match_col[c] = r
                    return True
        return False

    return sum(augment(r, set()) for r in range(n_rows))


def eliminate_dependent_entries(
    model: NetworkModel,
    trials: int = 5,
    seed: int = 42,
    max_subset: int | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> tuple[FunctionSet, list[RemovalRecord]]:
    """Iteratively remove dependent entries from the observable block.

    Searches square subset pairs (measured, excited) of sizes 2 and up,
    ascending, lexicographic within a size, for a submatrix of the current
    sparsified block whose structural rank is full (equal to the subset
    size) while its numeric rank across all trials stays below it.  Such a
    submatrix certifies a dependency; the lexicographically smallest
    (measured, excited) entry of the subset still present is zeroed in
    every trial and the search restarts.  Stops when no subset certifies a
    dependency and returns the surviving entries plus the removal log.
    """
    pattern = structural_pattern(model)
    measured = model.measured
    excited = model.excited
    remaining = {
        (j, i)
        for j in measured
        for i in excited
        if pattern.entry(j, i) is EntryClass.NON_CONSTANT
    }
    log: list[RemovalRecord] = []
    limit = min(len(measured), len(excited))
    if max_subset is not None:
        if max_subset < 2:
            raise ValueError("max_subset must be at least 2")
        limit = min(limit, max_subset)
    if limit < 2:
        return FunctionSet(pairs=tuple(sorted(remaining))), log

    instances = draw_instances(model, trials, seed, pattern)
    row_idx = [v - 1 for v in measured]
    col_idx = [v - 1 for v in excited]
    blocks = [inst.t[np.ix_(row_idx, col_idx)].copy() for inst in instances]
    nonzero = np.array(
        [[pattern.is_nonzero(j, i) for i in excited] for j in measured]
    )

    def find_dependency():
        for k in range(2, limit + 1):
            for c_pos in itertools.combinations(range(len(measured)), k):
                for r_pos in itertools.combinations(range(len(excited)), k):
                    sub_pattern = nonzero[np.ix_(c_pos, r_pos)]
                    if _submatrix_sprank(sub_pattern) != k:
                        continue
                    deficient = True
                    for block in blocks:
                        sub = block[np.ix_(c_pos, r_pos)]
                        if numeric_rank(sub, tolerance).rank >= k:
                            deficient = False
                            break
                    if deficient:
                        return c_pos, r_pos
        return None

    while True:
        hit = find_dependency()
        if hit is None:
            break
        c_pos, r_pos = hit
        candidates = sorted(
            (measured[cp], excited[rp])
            for cp in c_pos
            for rp in r_pos
            if (measured[cp], excited[rp]) in remaining
        )
        if not candidates:
            break
        entry = candidates[0]
        remaining.discard(entry)
        cp = measured.index(entry[0])
        rp = excited.index(entry[1])
        for block in blocks:
            block[cp, rp] = 0.0
        nonzero[cp, rp] = False
        log.append(
            RemovalRecord(
                entry=entry,
                measured_subset=tuple(measured[p] for p in c_pos),
                excited_subset=tuple(excited[p] for p in r_pos),
            )
        )
    return FunctionSet(pairs=tuple(sorted(remaining))), log
