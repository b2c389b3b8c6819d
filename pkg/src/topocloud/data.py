"""Synthetic annulus generation and CSV point-cloud I/O."""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .geometry import PointCloud

__all__ = ["AnnulusSpec", "ParseError", "generate_annulus", "load_csv", "save_csv"]


class ParseError(Exception):
    """Malformed input file (ragged rows, non-numeric or non-finite values)."""


@dataclass(frozen=True)
class AnnulusSpec:
    """Parameters for random annular data: points at radius ~ N(radius,
    spread) and uniform angle. The seed fully determines the cloud."""

    n_points: int
    radius: float = 1.0
    spread: float = 0.05
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_points < 1:
            raise ValueError(f"need at least one point, got {self.n_points}")
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if self.spread < 0:
            raise ValueError(f"spread must be non-negative, got {self.spread}")


def generate_annulus(spec: AnnulusSpec) -> PointCloud:
    """Sample (radius + eps) * (cos t, sin t) with t uniform in [0, 2pi)."""
    rng = np.random.default_rng(spec.seed)
    theta = rng.uniform(0.0, 2.0 * math.pi, spec.n_points)
    eps = rng.normal(0.0, spec.spread, spec.n_points)
    radial = spec.radius + eps
    points = np.column_stack((radial * np.cos(theta), radial * np.sin(theta)))
    return PointCloud(points)


def _parse_row(tokens: list[str], row_number: int) -> list[float]:
    out = []
    for tok in tokens:
        try:
            v = float(tok)
        except ValueError as exc:
            raise ParseError(f"row {row_number}: non-numeric value {tok!r}") from exc
        if not math.isfinite(v):
            raise ParseError(f"row {row_number}: non-finite value {tok!r}")
        out.append(v)
    return out


def load_csv(path: Union[str, Path]) -> PointCloud:
    """Read a point cloud (one point per row, comma-separated coordinates).

    A single non-numeric first row is treated as a header and skipped. Ragged
    rows are an error naming the offending row.
    """
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    rows = [(i + 1, line.strip()) for i, line in enumerate(lines) if line.strip()]
    if not rows:
        raise ParseError(f"{path}: no data rows")

    first_number, first_line = rows[0]
    tokens = first_line.split(",")
    try:
        data = [_parse_row(tokens, first_number)]
    except ParseError:
        data = []  # header row
        rows = rows[1:]
        if not rows:
            raise ParseError(f"{path}: header but no data rows")
    start = 1 if data else 0
    width = len(tokens)
    for row_number, line in rows[start:]:
        tokens = line.split(",")
        if len(tokens) != width:
            raise ParseError(
                f"row {row_number}: expected {width} columns, got {len(tokens)}"
            )
        data.append(_parse_row(tokens, row_number))
    return PointCloud(np.array(data, dtype=np.float64))


def save_csv(cloud: PointCloud, path: Union[str, Path]) -> None:
    """Write a cloud as bare CSV with 17 significant digits, enough for an
    exact round-trip through load_csv."""
    lines = [
        ",".join(f"{v:.17g}" for v in row) for row in cloud.points
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
