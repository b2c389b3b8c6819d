"""Simplicial complexes over a point cloud: neighbor graphs from growing
balls, connected components, Vietoris-Rips and Cech complexes, and the full
Rips filtration.

All scale comparisons are closed (<=): an edge appears exactly when the closed
balls of radius r touch, i.e. when the endpoints are at most 2r apart.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Sequence, Set, Tuple

import numpy as np

from .geometry import DistanceMatrix, PointCloud, distance_matrix

__all__ = [
    "Vertices",
    "SimplicialComplex",
    "FilteredComplex",
    "NeighborGraph",
    "UnionFind",
    "neighbor_graph",
    "connected_components",
    "rips_complex",
    "cech_complex",
    "rips_filtration",
    "minimum_enclosing_ball_radius",
]

# A simplex is a strictly increasing tuple of point indices; its dimension is
# len(vertices) - 1.
Vertices = Tuple[int, ...]


@dataclass
class SimplicialComplex:
    """Simplices grouped by dimension, closed under taking faces."""

    simplices: Dict[int, Set[Vertices]] = field(default_factory=dict)

    @property
    def max_dimension(self) -> int:
        dims = [d for d, s in self.simplices.items() if s]
        return max(dims) if dims else -1

    def add(self, simplex: Vertices) -> None:
        dim = len(simplex) - 1
        self.simplices.setdefault(dim, set()).add(simplex)

    def __contains__(self, simplex: Vertices) -> bool:
        return simplex in self.simplices.get(len(simplex) - 1, set())

    def all_simplices(self) -> Set[Vertices]:
        out: Set[Vertices] = set()
        for s in self.simplices.values():
            out |= s
        return out

    def counts(self) -> Dict[int, int]:
        return {d: len(s) for d, s in sorted(self.simplices.items()) if s}

    def is_face_closed(self) -> bool:
        for dim, simps in self.simplices.items():
            if dim == 0:
                continue
            for s in simps:
                for face in itertools.combinations(s, dim):
                    if face not in self:
                        return False
        return True


@dataclass
class FilteredComplex:
    """Simplices with their filtration scales, sorted faces-first.

    Entries are ordered by (filtration value, dimension, vertex tuple), which
    guarantees every face precedes its cofaces.
    """

    entries: List[Tuple[Vertices, float]]

    @property
    def max_value(self) -> float:
        return max((v for _, v in self.entries), default=0.0)

    def thresholded(self, alpha: float) -> SimplicialComplex:
        """The subcomplex of simplices with filtration value <= alpha."""
        sc = SimplicialComplex()
        for simplex, value in self.entries:
            if value <= alpha:
                sc.add(simplex)
        return sc


@dataclass(frozen=True)
class NeighborGraph:
    """Graph with an edge wherever two points' closed r-balls intersect."""

    n: int
    edges: FrozenSet[Tuple[int, int]]
    radius: float


class UnionFind:
    """Disjoint sets over 0..n-1 with path compression and union by rank."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.n_components = n

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> bool:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        if self.rank[ri] < self.rank[rj]:
            ri, rj = rj, ri
        self.parent[rj] = ri
        if self.rank[ri] == self.rank[rj]:
            self.rank[ri] += 1
        self.n_components -= 1
        return True

    def components(self) -> List[Set[int]]:
        """Component sets ordered by their smallest member."""
        groups: Dict[int, Set[int]] = {}
        for i in range(len(self.parent)):
            groups.setdefault(self.find(i), set()).add(i)
        return sorted(groups.values(), key=min)


def neighbor_graph(dm: DistanceMatrix, r: float) -> NeighborGraph:
    """Edges between every pair of points at most 2r apart."""
    if r < 0:
        raise ValueError(f"radius must be non-negative, got {r}")
    n = dm.n
    ii, jj = np.nonzero(np.triu(dm.values <= 2.0 * r, k=1))
    edges = frozenset((int(i), int(j)) for i, j in zip(ii, jj))
    return NeighborGraph(n, edges, r)


def connected_components(g: NeighborGraph) -> List[Set[int]]:
    """Clusters of the neighbor graph, ordered by smallest member."""
    uf = UnionFind(g.n)
    for i, j in sorted(g.edges):
        uf.union(i, j)
    return uf.components()


def _adjacency(dm: DistanceMatrix, alpha: float) -> List[Set[int]]:
    n = dm.n
    close = dm.values <= alpha
    adj: List[Set[int]] = []
    for i in range(n):
        nbrs = set(np.nonzero(close[i])[0].tolist())
        nbrs.discard(i)
        adj.append(nbrs)
    return adj


def rips_complex(dm: DistanceMatrix, alpha: float, max_dim: int) -> SimplicialComplex:
    """Vietoris-Rips complex: a simplex is present iff all pairwise vertex
    distances are <= alpha, up to dimension max_dim.

    Built by incremental lower-neighbor expansion of the 1-skeleton rather
    than scanning all vertex subsets.
    """
    if alpha < 0:
        raise ValueError(f"alpha must be non-negative, got {alpha}")
    if max_dim < 0:
        raise ValueError(f"max_dim must be non-negative, got {max_dim}")
    n = dm.n
    adj = _adjacency(dm, alpha)
    sc = SimplicialComplex()
    sc.simplices[0] = {(v,) for v in range(n)}

    def expand(simplex: Vertices, cands: Set[int]) -> None:
        for u in sorted(cands):
            coface = simplex + (u,)
            sc.add(coface)
            if len(coface) - 1 < max_dim:
                expand(coface, {w for w in cands if w > u and w in adj[u]})

    if max_dim >= 1:
        for v in range(n):
            expand((v,), {u for u in adj[v] if u > v})
    return sc


def minimum_enclosing_ball_radius(points: np.ndarray) -> float:
    """Radius of the smallest ball containing 1-3 points in the plane.

    For three points this is either the diametral ball of the longest side
    (obtuse/right/degenerate triangles) or the circumscribed circle.
    """
    pts = np.asarray(points, dtype=np.float64)
    k = pts.shape[0]
    if k == 1:
        return 0.0
    if k == 2:
        return float(np.linalg.norm(pts[0] - pts[1])) / 2.0
    if k != 3:
        raise ValueError(f"supported for 1-3 points, got {k}")
    d01 = float(np.linalg.norm(pts[0] - pts[1]))
    d02 = float(np.linalg.norm(pts[0] - pts[2]))
    d12 = float(np.linalg.norm(pts[1] - pts[2]))
    sides = [(d12, 0), (d02, 1), (d01, 2)]  # (length of side opposite vertex i, i)
    longest, apex = max(sides)
    others = [i for i in range(3) if i != apex]
    center = (pts[others[0]] + pts[others[1]]) / 2.0
    r = longest / 2.0
    if float(np.linalg.norm(pts[apex] - center)) <= r * (1.0 + 1e-12):
        return r
    a, b, c = d12, d02, d01
    cross = (pts[1][0] - pts[0][0]) * (pts[2][1] - pts[0][1]) - (
        pts[1][1] - pts[0][1]
    ) * (pts[2][0] - pts[0][0])
    area = abs(cross) / 2.0
    if area == 0.0:
        return r
    return a * b * c / (4.0 * area)


def cech_complex(cloud: PointCloud, alpha: float, max_dim: int = 2) -> SimplicialComplex:
    """Cech complex of a planar cloud: a simplex is present iff the balls of
    radius alpha around its vertices share a common point, i.e. the minimum
    enclosing ball of the vertices has radius <= alpha.

    Restricted to ambient dimension 2 and simplex dimension <= 2; higher
    skeleta are the Rips complex's job.
    """
    if cloud.dimension != 2:
        raise ValueError(f"Cech complex supports dimension 2 only, got {cloud.dimension}")
    if alpha < 0:
        raise ValueError(f"alpha must be non-negative, got {alpha}")
    if max_dim > 2:
        raise ValueError(f"Cech complex supports max_dim <= 2, got {max_dim}")
    if max_dim < 0:
        raise ValueError(f"max_dim must be non-negative, got {max_dim}")
    dm = distance_matrix(cloud)
    # Vertices and edges agree with Rips at scale 2*alpha: two alpha-balls
    # intersect exactly when their centers are at most 2*alpha apart.
    sc = rips_complex(dm, 2.0 * alpha, min(max_dim, 1))
    if max_dim == 2:
        edges = sc.simplices.get(1, set())
        for i, j in edges:
            for k in range(j + 1, cloud.n):
                if (i, k) in edges and (j, k) in edges:
                    if minimum_enclosing_ball_radius(cloud.points[[i, j, k]]) <= alpha:
                        sc.add((i, j, k))
    return sc


def rips_filtration(dm: DistanceMatrix, max_dim: int) -> FilteredComplex:
    """Every simplex up to max_dim with filtration value equal to its largest
    pairwise vertex distance (0 for vertices), sorted faces-first.
    """
    if max_dim < 0:
        raise ValueError(f"max_dim must be non-negative, got {max_dim}")
    n = dm.n
    vals = dm.values.tolist()  # plain lists: scalar lookups dominate here
    entries: List[Tuple[Vertices, float]] = [((v,), 0.0) for v in range(n)]

    def expand(simplex: Vertices, value: float) -> None:
        for u in range(simplex[-1] + 1, n):
            row = vals[u]
            v_new = value
            for w in simplex:
                if row[w] > v_new:
                    v_new = row[w]
            coface = simplex + (u,)
            entries.append((coface, v_new))
            if len(coface) - 1 < max_dim:
                expand(coface, v_new)

    if max_dim >= 1:
        for v in range(n):
            expand((v,), 0.0)
    entries.sort(key=lambda e: (e[1], len(e[0]), e[0]))
    return FilteredComplex(entries)
