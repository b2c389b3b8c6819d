"""Matplotlib renderings of persistence output: barcode and diagram figures.

Each bar / diagram point carries a gid ("bar-k" / "pair-k") so the saved SVG
contains one identifiable mark per persistence pair.
"""
from __future__ import annotations

from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .homology import PersistenceDiagram, PersistencePair

__all__ = ["barcode_figure", "diagram_figure", "save_svg"]

_DIM_COLORS = {0: "tab:red", 1: "tab:green", 2: "tab:blue"}


def _color(dim: int) -> str:
    return _DIM_COLORS.get(dim, "tab:gray")


def _selected(diagram: PersistenceDiagram, include_zero: bool) -> list[PersistencePair]:
    pairs = diagram.pairs if include_zero else diagram.nonzero_pairs()
    return sorted(pairs, key=lambda p: (p.dimension, p.birth, p.death))


def barcode_figure(
    diagram: PersistenceDiagram,
    include_zero: bool = False,
    radius_axis: bool = False,
):
    """Horizontal bars, one per persistence pair, grouped by dimension.

    Infinite bars run to the maximum scale and end in an arrowhead. With
    radius_axis the scale is halved to read as a ball radius instead of a
    pairwise distance.
    """
    scale = 0.5 if radius_axis else 1.0
    pairs = _selected(diagram, include_zero)
    fig, ax = plt.subplots(figsize=(7, max(2.0, 0.22 * len(pairs) + 1)))
    top = diagram.max_scale * scale
    for k, pair in enumerate(pairs):
        birth = pair.birth * scale
        death = top if pair.is_infinite else pair.death * scale
        (line,) = ax.plot(
            [birth, death], [k, k], lw=2.5, color=_color(pair.dimension), solid_capstyle="butt"
        )
        line.set_gid(f"bar-{k}")
        if pair.is_infinite:
            mark = ax.plot([death], [k], marker=">", color=_color(pair.dimension))[0]
            mark.set_gid(f"bar-{k}-inf")
    ax.set_xlabel("radius" if radius_axis else "scale")
    ax.set_ylabel("bar")
    ax.set_xlim(0, top * 1.05 if top > 0 else 1.0)
    ax.set_title("Persistence barcode")
    handles = [
        plt.Line2D([], [], color=_color(d), lw=2.5, label=f"dim {d}")
        for d in sorted({p.dimension for p in pairs})
    ]
    if handles:
        ax.legend(handles=handles, loc="lower right")
    fig.tight_layout()
    return fig


def diagram_figure(
    diagram: PersistenceDiagram,
    include_zero: bool = False,
    radius_axis: bool = False,
):
    """Birth/death scatter with the birth = death diagonal; one mark per
    pair, infinite deaths drawn at the maximum scale with an up arrow."""
    scale = 0.5 if radius_axis else 1.0
    pairs = _selected(diagram, include_zero)
    top = diagram.max_scale * scale
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    lim = top * 1.05 if top > 0 else 1.0
    ax.plot([0, lim], [0, lim], ls="--", color="0.6", lw=1)
    for k, pair in enumerate(pairs):
        birth = pair.birth * scale
        death = top if pair.is_infinite else pair.death * scale
        marker = "^" if pair.is_infinite else "o"
        (mark,) = ax.plot(
            [birth], [death], marker=marker, ls="", color=_color(pair.dimension), ms=6
        )
        mark.set_gid(f"pair-{k}")
    ax.set_xlabel("birth")
    ax.set_ylabel("death")
    ax.set_xlim(0, lim)
    ax.set_ylim(0, lim)
    ax.set_title("Persistence diagram")
    fig.tight_layout()
    return fig


def save_svg(fig, path: Union[str, Path]) -> None:
    """Save a figure as SVG without embedded timestamps, so identical runs
    produce identical files."""
    fig.savefig(Path(path), format="svg", metadata={"Date": None})
    plt.close(fig)
