import itertools
import math

import numpy as np
import pytest

from topocloud.complexes import (
    FilteredComplex,
    UnionFind,
    cech_complex,
    connected_components,
    minimum_enclosing_ball_radius,
    neighbor_graph,
    rips_complex,
    rips_filtration,
)
from topocloud.geometry import PointCloud, distance_matrix

EQUILATERAL = PointCloud([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])


def brute_force_rips(dm, alpha, max_dim):
    """Every vertex subset of size <= max_dim+1 with all pairwise distances
    <= alpha."""
    n = dm.n
    simplices = set()
    for k in range(1, max_dim + 2):
        for combo in itertools.combinations(range(n), k):
            if all(dm[i, j] <= alpha for i, j in itertools.combinations(combo, 2)):
                simplices.add(combo)
    return simplices


class TestNeighborGraph:
    def test_tangency_counts(self):
        dm = distance_matrix(PointCloud([[0, 0], [1, 0]]))
        assert neighbor_graph(dm, 0.5).edges == {(0, 1)}

    def test_just_below_tangency(self):
        dm = distance_matrix(PointCloud([[0, 0], [1, 0]]))
        assert neighbor_graph(dm, 0.49).edges == frozenset()

    def test_half_diameter_gives_complete_graph(self):
        rng = np.random.default_rng(5)
        cloud = PointCloud(rng.normal(size=(12, 2)))
        dm = distance_matrix(cloud)
        g = neighbor_graph(dm, dm.max_distance() / 2)
        assert len(g.edges) == 12 * 11 // 2

    def test_zero_radius_no_edges(self):
        dm = distance_matrix(PointCloud([[0, 0], [1, 0], [2, 0]]))
        assert neighbor_graph(dm, 0.0).edges == frozenset()

    def test_negative_radius_rejected(self):
        dm = distance_matrix(PointCloud([[0, 0], [1, 0]]))
        with pytest.raises(ValueError, match="non-negative"):
            neighbor_graph(dm, -0.1)

    def test_matches_rips_one_skeleton(self):
        rng = np.random.default_rng(6)
        cloud = PointCloud(rng.normal(size=(25, 2)))
        dm = distance_matrix(cloud)
        for r in (0.1, 0.5, 1.0):
            g = neighbor_graph(dm, r)
            sc = rips_complex(dm, 2 * r, 1)
            assert set(g.edges) == sc.simplices.get(1, set())


class TestConnectedComponents:
    def test_no_edges(self):
        dm = distance_matrix(PointCloud(np.arange(10).reshape(5, 2).astype(float)))
        clusters = connected_components(neighbor_graph(dm, 0.0))
        assert clusters == [{i} for i in range(5)]

    def test_complete_graph(self):
        rng = np.random.default_rng(9)
        cloud = PointCloud(rng.normal(size=(8, 2)))
        dm = distance_matrix(cloud)
        clusters = connected_components(neighbor_graph(dm, dm.max_distance()))
        assert clusters == [set(range(8))]

    def test_three_pairs_nine_singletons(self):
        # Fifteen points: 3 tight pairs plus 9 isolated singletons gives the
        # (12, 0) bookkeeping at a scale between the pair gap and isolation gap.
        pts = []
        for k in range(3):
            pts += [[10.0 * k, 0.0], [10.0 * k + 0.1, 0.0]]
        pts += [[10.0 * k, 20.0] for k in range(9)]
        dm = distance_matrix(PointCloud(np.array(pts)))
        clusters = connected_components(neighbor_graph(dm, 0.5))
        assert len(clusters) == 12
        assert sorted(len(c) for c in clusters) == [1] * 9 + [2] * 3

    def test_invariant_under_edge_order(self):
        rng = np.random.default_rng(12)
        cloud = PointCloud(rng.normal(size=(30, 2)))
        dm = distance_matrix(cloud)
        g = neighbor_graph(dm, 0.3)
        reference = connected_components(g)
        for seed in range(5):
            uf = UnionFind(g.n)
            edges = list(g.edges)
            np.random.default_rng(seed).shuffle(edges)
            for i, j in edges:
                uf.union(i, j)
            assert uf.components() == reference


class TestUnionFind:
    def test_find_idempotent(self):
        uf = UnionFind(6)
        uf.union(0, 1)
        uf.union(1, 2)
        root = uf.find(2)
        assert uf.find(2) == root and uf.find(root) == root

    def test_component_count_drops_by_one_per_merge(self):
        uf = UnionFind(5)
        assert uf.n_components == 5
        assert uf.union(0, 1) and uf.n_components == 4
        assert not uf.union(0, 1) and uf.n_components == 4
        assert uf.union(3, 4) and uf.n_components == 3


class TestRipsComplex:
    def test_triangle_below_threshold(self):
        dm = distance_matrix(EQUILATERAL)
        sc = rips_complex(dm, 0.99, 2)
        assert sc.counts() == {0: 3}

    def test_triangle_threshold_inclusive(self):
        dm = distance_matrix(EQUILATERAL)
        sc = rips_complex(dm, 1.0, 2)
        assert sc.counts() == {0: 3, 1: 3, 2: 1}

    def test_matches_subset_enumeration(self):
        rng = np.random.default_rng(13)
        cloud = PointCloud(rng.normal(size=(20, 2)))
        dm = distance_matrix(cloud)
        for alpha in (0.3, 0.8, 1.5):
            sc = rips_complex(dm, alpha, 3)
            assert sc.all_simplices() == brute_force_rips(dm, alpha, 3)

    def test_face_closed(self):
        rng = np.random.default_rng(14)
        dm = distance_matrix(PointCloud(rng.normal(size=(15, 2))))
        assert rips_complex(dm, 1.0, 3).is_face_closed()

    def test_monotone_in_alpha(self):
        rng = np.random.default_rng(15)
        dm = distance_matrix(PointCloud(rng.normal(size=(15, 2))))
        small = rips_complex(dm, 0.8, 2).all_simplices()
        large = rips_complex(dm, 1.2, 2).all_simplices()
        assert small <= large


class TestMinimumEnclosingBall:
    def test_two_points(self):
        assert minimum_enclosing_ball_radius(np.array([[0.0, 0.0], [2.0, 0.0]])) == 1.0

    def test_equilateral_circumradius(self):
        r = minimum_enclosing_ball_radius(EQUILATERAL.points)
        assert r == pytest.approx(1 / math.sqrt(3), rel=1e-12)

    def test_obtuse_triangle_uses_longest_side(self):
        pts = np.array([[0.0, 0.0], [4.0, 0.0], [2.0, 0.1]])
        assert minimum_enclosing_ball_radius(pts) == 2.0

    def test_collinear(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]])
        assert minimum_enclosing_ball_radius(pts) == 1.5


class TestCechComplex:
    def test_triangle_present_above_circumradius(self):
        sc = cech_complex(EQUILATERAL, 0.58, 2)
        assert sc.counts() == {0: 3, 1: 3, 2: 1}

    def test_edges_but_no_triangle(self):
        sc = cech_complex(EQUILATERAL, 0.5, 2)
        assert sc.counts() == {0: 3, 1: 3}

    def test_single_point(self):
        sc = cech_complex(PointCloud([[2.0, 3.0]]), 0.0, 2)
        assert sc.counts() == {0: 1}

    def test_max_dim_above_two_rejected(self):
        with pytest.raises(ValueError, match="max_dim"):
            cech_complex(EQUILATERAL, 1.0, 3)

    def test_inclusion_chain(self):
        # Rips_a subset Cech_a subset Rips_2a; identical 1-skeleta for the
        # outer pair.
        rng = np.random.default_rng(16)
        for _ in range(10):
            n = int(rng.integers(5, 25))
            cloud = PointCloud(rng.normal(size=(n, 2)))
            dm = distance_matrix(cloud)
            alpha = float(rng.uniform(0.2, 1.5))
            rips_a = rips_complex(dm, alpha, 2)
            cech_a = cech_complex(cloud, alpha, 2)
            rips_2a = rips_complex(dm, 2 * alpha, 2)
            assert rips_a.all_simplices() <= cech_a.all_simplices()
            assert cech_a.all_simplices() <= rips_2a.all_simplices()
            assert cech_a.simplices.get(1, set()) == rips_2a.simplices.get(1, set())


class TestRipsFiltration:
    def test_unit_square_values(self):
        dm = distance_matrix(PointCloud([[0, 0], [1, 0], [1, 1], [0, 1]]))
        fc = rips_filtration(dm, 2)
        by_value = {}
        for simplex, value in fc.entries:
            by_value.setdefault(round(value, 12), []).append(simplex)
        root2 = round(math.sqrt(2), 12)
        assert len(by_value[0.0]) == 4
        assert sorted(len(s) for s in by_value[1.0]) == [2, 2, 2, 2]
        diag_entries = by_value[root2]
        assert sorted(len(s) for s in diag_entries) == [2, 2, 3, 3, 3, 3]

    def test_single_point(self):
        fc = rips_filtration(distance_matrix(PointCloud([[0.0, 0.0]])), 2)
        assert fc.entries == [((0,), 0.0)]

    def test_sorted_faces_first(self):
        rng = np.random.default_rng(17)
        dm = distance_matrix(PointCloud(rng.normal(size=(10, 2))))
        fc = rips_filtration(dm, 2)
        keys = [(v, len(s), s) for s, v in fc.entries]
        assert keys == sorted(keys)
        position = {s: i for i, (s, _) in enumerate(fc.entries)}
        for simplex, value in fc.entries:
            if len(simplex) > 1:
                for face in itertools.combinations(simplex, len(simplex) - 1):
                    assert position[face] < position[simplex]
                    assert fc.entries[position[face]][1] <= value

    def test_thresholding_reproduces_rips_complex(self):
        rng = np.random.default_rng(18)
        dm = distance_matrix(PointCloud(rng.normal(size=(12, 2))))
        fc = rips_filtration(dm, 2)
        for alpha in (0.4, 0.9, 2.0):
            assert fc.thresholded(alpha).all_simplices() == rips_complex(
                dm, alpha, 2
            ).all_simplices()
