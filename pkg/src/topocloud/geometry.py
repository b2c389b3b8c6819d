"""Metric-space primitives: p-norm distances, distance matrices, convex hulls
and the exact diameter of a planar point set via rotating calipers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

__all__ = [
    "PointCloud",
    "DistanceMatrix",
    "HullResult",
    "p_norm_distance",
    "distance_matrix",
    "convex_hull",
    "rotating_calipers",
]


@dataclass(frozen=True)
class PointCloud:
    """A finite indexed set of points in d-dimensional real space.

    Points are stored as an (n, d) float array; indices 0..n-1 are stable and
    used by every downstream structure.
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError(f"points must be a 2-D array, got shape {pts.shape}")
        if pts.shape[0] < 1:
            raise ValueError("a point cloud needs at least one point")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point coordinates must be finite")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise-distance cache with zero diagonal."""

    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {v.shape}")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, idx) -> float:
        return self.values[idx]

    def max_distance(self) -> float:
        """Largest pairwise distance (the diameter of the cloud)."""
        return float(self.values.max())


def p_norm_distance(x: Sequence[float], y: Sequence[float], p: float = 2.0) -> float:
    """Distance between two points under the p-norm, (sum |xi-yi|^p)^(1/p)."""
    if p < 1:
        raise ValueError(f"p must be >= 1 for a norm, got {p}")
    a = np.asarray(x, dtype=np.float64)
    b = np.asarray(y, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.sum(np.abs(a - b) ** p) ** (1.0 / p))


def distance_matrix(cloud: PointCloud, p: float = 2.0) -> DistanceMatrix:
    """All pairwise p-norm distances of a cloud.

    Vectorized with the same per-pair reduction as p_norm_distance; entries
    agree exactly for p = 1 and 2 and to within a unit in the last place for
    other p (numpy's vectorized pow may round differently than the scalar
    path).
    """
    if p < 1:
        raise ValueError(f"p must be >= 1 for a norm, got {p}")
    pts = cloud.points
    diff = np.abs(pts[:, None, :] - pts[None, :, :])
    m = np.sum(diff**p, axis=-1) ** (1.0 / p)
    np.fill_diagonal(m, 0.0)
    return DistanceMatrix(m)


@dataclass(frozen=True)
class HullResult:
    """Convex hull of a planar cloud plus its exact diameter.

    hull_indices are cloud indices in counter-clockwise order; the diameter is
    the maximum pairwise distance over the whole cloud, realized by a pair of
    hull vertices.
    """

    hull_indices: Tuple[int, ...]
    diameter: float
    diameter_pair: Tuple[int, int]


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> Tuple[float, float]:
    """Signed cross product (a-o) x (b-o) and a relative magnitude for its
    collinearity tolerance."""
    t1 = (a[0] - o[0]) * (b[1] - o[1])
    t2 = (a[1] - o[1]) * (b[0] - o[0])
    return t1 - t2, max(abs(t1), abs(t2))


_COLLINEAR_RTOL = 1e-12


def _is_left_turn(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> bool:
    cross, mag = _cross(o, a, b)
    return cross > _COLLINEAR_RTOL * mag


def convex_hull(
    cloud: PointCloud, p: float = 2.0, dm: DistanceMatrix | None = None
) -> HullResult:
    """Monotone-chain convex hull of a 2-D cloud, CCW, strict turns only
    (collinear interior points are excluded).
    """
    if cloud.dimension != 2:
        raise ValueError(f"convex hull supports dimension 2 only, got {cloud.dimension}")
    pts = cloud.points
    order = sorted(range(cloud.n), key=lambda i: (pts[i, 0], pts[i, 1], i))

    # Drop exact duplicates so degenerate clouds still give a simple polygon.
    deduped = []
    for i in order:
        if deduped and np.array_equal(pts[deduped[-1]], pts[i]):
            continue
        deduped.append(i)

    if dm is None:
        dm = distance_matrix(cloud, p)
    if len(deduped) == 1:
        i = deduped[0]
        return HullResult((i,), 0.0, (i, i))

    lower: list[int] = []
    for i in deduped:
        while len(lower) > 1 and not _is_left_turn(pts[lower[-2]], pts[lower[-1]], pts[i]):
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(deduped):
        while len(upper) > 1 and not _is_left_turn(pts[upper[-2]], pts[upper[-1]], pts[i]):
            upper.pop()
        upper.append(i)
    hull = tuple(lower[:-1] + upper[:-1])

    diameter, pair = rotating_calipers(hull, cloud, dm)
    return HullResult(hull, diameter, pair)


def _antipodal_pairs(coords: np.ndarray):
    """Yield index pairs (into the hull) of all antipodal vertex pairs of a
    strictly convex CCW polygon."""
    h = len(coords)
    if h == 2:
        yield 0, 1
        return

    def area2(i: int, j: int, k: int) -> float:
        return _cross(coords[i], coords[j], coords[k])[0]

    j = 1
    for i in range(h):
        i1 = (i + 1) % h
        while area2(i, i1, (j + 1) % h) > area2(i, i1, j):
            j = (j + 1) % h
        yield i, j
        yield i1, j


def rotating_calipers(
    hull: Sequence[int], cloud: PointCloud, dm: DistanceMatrix | None = None
) -> Tuple[float, Tuple[int, int]]:
    """Exact diameter of the cloud from its convex hull.

    Walks antipodal vertex pairs of the hull polygon; among ties returns the
    lexicographically smallest cloud-index pair.
    """
    if dm is None:
        dm = distance_matrix(cloud)
    if len(hull) == 1:
        i = hull[0]
        return 0.0, (i, i)
    coords = cloud.points[list(hull)]
    best = -1.0
    best_pair = (hull[0], hull[0])
    for a, b in _antipodal_pairs(coords):
        i, j = hull[a], hull[b]
        if i == j:
            continue
        pair = (i, j) if i < j else (j, i)
        d = float(dm[pair])
        if d > best or (d == best and pair < best_pair):
            best = d
            best_pair = pair
    return best, best_pair
