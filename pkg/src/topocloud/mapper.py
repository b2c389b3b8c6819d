"""The Mapper pipeline: filter functions, overlapping interval covers,
refined pullback via fixed-radius clustering, and the nerve graph; plus the
cluster-cover variant that skips the filter entirely.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from .complexes import connected_components, neighbor_graph
from .geometry import DistanceMatrix, PointCloud, distance_matrix

__all__ = [
    "CoverScheme",
    "MapperNode",
    "MapperGraph",
    "filter_project",
    "uniform_cover",
    "refined_pullback",
    "nerve",
    "cluster_cover_complex",
]


def filter_project(cloud: PointCloud, axis: int) -> np.ndarray:
    """Filter values by projecting the cloud onto one coordinate axis."""
    if not 0 <= axis < cloud.dimension:
        raise ValueError(f"axis {axis} out of range for dimension {cloud.dimension}")
    return cloud.points[:, axis].copy()


@dataclass(frozen=True)
class CoverScheme:
    """Overlapping intervals covering the filter range.

    Consecutive intervals share a fraction g of their length; g = 0 is the
    degenerate touching partition.
    """

    intervals: Tuple[Tuple[float, float], ...]
    overlap_fraction: float

    @property
    def n_intervals(self) -> int:
        return len(self.intervals)


def uniform_cover(lo: float, hi: float, n: int, g: float) -> CoverScheme:
    """n equal-length intervals over [lo, hi] with overlap fraction g.

    Interval length L = (hi - lo) / (n - (n-1)*g); interval i starts at
    lo + i*L*(1-g); the union covers [lo, hi] exactly.
    """
    if lo >= hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if n < 1:
        raise ValueError(f"need at least one interval, got {n}")
    if not 0 <= g < 1:
        raise ValueError(f"overlap fraction must be in [0, 1), got {g}")
    length = (hi - lo) / (n - (n - 1) * g)
    step = length * (1.0 - g)
    intervals = tuple((lo + i * step, lo + i * step + length) for i in range(n))
    return CoverScheme(intervals, g)


@dataclass(frozen=True)
class MapperNode:
    """One cluster of an interval's preimage: its members and their mean."""

    interval_index: int
    cluster_index: int
    members: Tuple[int, ...]
    centroid: Tuple[float, ...]


@dataclass
class MapperGraph:
    """Nerve of the pullback clusters, restricted to its 1-skeleton."""

    nodes: List[MapperNode]
    edges: List[Tuple[int, int]]

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def n_components(self) -> int:
        parent = list(range(self.n_nodes))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        count = self.n_nodes
        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                count -= 1
        return count

    def cycle_rank(self) -> int:
        """First Betti number of the graph: edges - nodes + components."""
        return self.n_edges - self.n_nodes + self.n_components()


def refined_pullback(
    cloud: PointCloud,
    filter_values: Sequence[float],
    cover: CoverScheme,
    cluster_radius: float,
    p: float = 2.0,
) -> List[MapperNode]:
    """Clusters of each cover interval's preimage.

    Points whose filter value lies in an interval (closed on both ends) are
    clustered as connected components of the neighbor graph at the given
    radius; each component becomes a node. Empty preimages yield no nodes.
    """
    if cluster_radius <= 0:
        raise ValueError(f"cluster radius must be positive, got {cluster_radius}")
    values = np.asarray(filter_values, dtype=np.float64)
    if values.shape != (cloud.n,):
        raise ValueError(
            f"need one filter value per point, got {values.shape} for {cloud.n} points"
        )
    dm = distance_matrix(cloud, p)
    nodes: List[MapperNode] = []
    for idx, (lo, hi) in enumerate(cover.intervals):
        member_idx = np.nonzero((values >= lo) & (values <= hi))[0]
        if member_idx.size == 0:
            continue
        sub = DistanceMatrix(dm.values[np.ix_(member_idx, member_idx)])
        clusters = connected_components(neighbor_graph(sub, cluster_radius))
        for ci, cluster in enumerate(clusters):
            members = tuple(int(member_idx[i]) for i in sorted(cluster))
            centroid = tuple(cloud.points[list(members)].mean(axis=0))
            nodes.append(MapperNode(idx, ci, members, centroid))
    return nodes


def nerve(nodes: Sequence[MapperNode]) -> MapperGraph:
    """Mapper graph: an edge wherever two clusters share a point."""
    ordered = sorted(nodes, key=lambda nd: (nd.interval_index, nd.cluster_index))
    member_sets = [set(nd.members) for nd in ordered]
    edges = [
        (a, b)
        for a in range(len(ordered))
        for b in range(a + 1, len(ordered))
        if member_sets[a] & member_sets[b]
    ]
    return MapperGraph(list(ordered), edges)


def cluster_cover_complex(
    cloud: PointCloud,
    dm: DistanceMatrix,
    r: float,
    link_threshold: Optional[float] = None,
) -> MapperGraph:
    """Low-resolution complex from the plain cluster cover (no filter).

    Nodes are the connected components of the neighbor graph at radius r,
    each with its centroid; clusters whose minimum inter-point distance is at
    most the linking threshold are joined by an edge. Distinct clusters are
    always more than 2r apart (that is what makes them distinct), so the
    default threshold is 4r: link when one more ball diameter would bridge
    the gap.
    """
    if r <= 0:
        raise ValueError(f"radius must be positive, got {r}")
    if link_threshold is None:
        link_threshold = 4.0 * r
    clusters = connected_components(neighbor_graph(dm, r))
    nodes = []
    for ci, cluster in enumerate(clusters):
        members = tuple(sorted(cluster))
        centroid = tuple(cloud.points[list(members)].mean(axis=0))
        nodes.append(MapperNode(ci, 0, members, centroid))
    edges = []
    for a in range(len(nodes)):
        for b in range(a + 1, len(nodes)):
            ia = list(nodes[a].members)
            ib = list(nodes[b].members)
            gap = float(dm.values[np.ix_(ia, ib)].min())
            if gap <= link_threshold:
                edges.append((a, b))
    return MapperGraph(nodes, edges)
