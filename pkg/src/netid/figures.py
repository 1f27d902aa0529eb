"""Matplotlib rendering of networks and bipartite graphs to image files."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .model import NetworkModel
from .structure import BipartiteGraph

_EXCITED_COLOR = "#1f77b4"
_MEASURED_COLOR = "#d62728"
_BOTH_COLOR = "#9467bd"
_PLAIN_COLOR = "#7f7f7f"


def _vertex_color(v: int, model: NetworkModel) -> str:
    excited = v in model.excited
    measured = v in model.measured
    if excited and measured:
        return _BOTH_COLOR
    if excited:
        return _EXCITED_COLOR
    if measured:
        return _MEASURED_COLOR
    return _PLAIN_COLOR


def draw_network(model: NetworkModel, path: str) -> None:
    """Draw the digraph on a circular layout and save it to ``path``."""
    n = model.vertex_count
    positions = {
        v: (math.cos(2 * math.pi * (v - 1) / n), math.sin(2 * math.pi * (v - 1) / n))
        for v in model.vertices()
    }
    fig, ax = plt.subplots(figsize=(4, 4))
    for i, j in model.edges:
        x0, y0 = positions[i]
        x1, y1 = positions[j]
        ax.annotate(
            "",
            xy=(x1, y1),
            xytext=(x0, y0),
            arrowprops=dict(
                arrowstyle="-|>", color="black", shrinkA=14, shrinkB=14, lw=1.0
            ),
        )
    for v, (x, y) in positions.items():
        ax.scatter([x], [y], s=360, color=_vertex_color(v, model), zorder=3)
        ax.text(x, y, str(v), ha="center", va="center", color="white", zorder=4)
    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.35, 1.35)
    ax.set_aspect("equal")
    ax.axis("off")
    handles = [
        plt.Line2D([], [], marker="o", ls="", color=c, label=l)
        for c, l in (
            (_EXCITED_COLOR, "excited"),
            (_MEASURED_COLOR, "measured"),
            (_BOTH_COLOR, "both"),
        )
    ]
    ax.legend(handles=handles, loc="upper right", fontsize=7, frameon=False)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def draw_bipartite(
    graph: BipartiteGraph,
    path: str,
    removed: tuple[tuple[int, int], ...] = (),
) -> None:
    """Draw the bipartite graph in two columns; removed edges are dashed."""
    removed_set = set(removed)
    left_y = {v: -k for k, v in enumerate(graph.left)}
    right_y = {v: -k for k, v in enumerate(graph.right)}
    height = max(len(graph.left), len(graph.right), 1)
    fig, ax = plt.subplots(figsize=(3.5, 0.7 * height + 1))
    for i, j in graph.edges:
        style = "--" if (i, j) in removed_set else "-"
        ax.plot([0, 1], [left_y[i], right_y[j]], style, color="black", lw=1.0)
    for v, y in left_y.items():
        ax.scatter([0], [y], s=320, color=_EXCITED_COLOR, zorder=3)
        ax.text(0, y, str(v), ha="center", va="center", color="white", zorder=4)
    for v, y in right_y.items():
        ax.scatter([1], [y], s=320, color=_MEASURED_COLOR, zorder=3)
        ax.text(1, y, str(v), ha="center", va="center", color="white", zorder=4)
    ax.set_xlim(-0.35, 1.35)
    ax.set_ylim(-height + 0.35, 0.9)
    ax.text(0, 0.65, "excited", ha="center", fontsize=8)
    ax.text(1, 0.65, "measured", ha="center", fontsize=8)
    ax.axis("off")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
