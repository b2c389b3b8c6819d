"""Topological data analysis for point clouds.

Metric geometry (p-norms, convex hulls, exact diameters), Vietoris-Rips and
Cech complexes, persistent homology over GF(2) with barcodes and Betti
numbers, and the Mapper graph pipeline. The `topocloud` CLI batch-processes
CSV point clouds into JSON, DOT and SVG artifacts.
"""
from .complexes import (
    FilteredComplex,
    NeighborGraph,
    SimplicialComplex,
    UnionFind,
    cech_complex,
    connected_components,
    neighbor_graph,
    rips_complex,
    rips_filtration,
)
from .data import AnnulusSpec, generate_annulus, load_csv, save_csv
from .geometry import (
    DistanceMatrix,
    HullResult,
    PointCloud,
    convex_hull,
    distance_matrix,
    p_norm_distance,
    rotating_calipers,
)
from .homology import (
    PersistenceDiagram,
    PersistencePair,
    betti_numbers,
    boundary_matrix,
    persistence_diagram,
    reduce_boundary,
)
from .mapper import (
    CoverScheme,
    MapperGraph,
    MapperNode,
    cluster_cover_complex,
    filter_project,
    nerve,
    refined_pullback,
    uniform_cover,
)

__version__ = "0.1.0"
