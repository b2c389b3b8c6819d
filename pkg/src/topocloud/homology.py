"""Persistent homology over the two-element field: boundary matrices,
standard column reduction, persistence diagrams and Betti numbers.

Coefficients are GF(2) throughout, so columns are index sets and column
addition is symmetric difference.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .complexes import FilteredComplex, SimplicialComplex, Vertices

__all__ = [
    "BoundaryMatrix",
    "Reduction",
    "PersistencePair",
    "PersistenceDiagram",
    "boundary_matrix",
    "reduce_boundary",
    "persistence_diagram",
    "betti_numbers",
]


@dataclass
class BoundaryMatrix:
    """Sparse GF(2) boundary matrix of a filtered complex.

    Column j holds the filtration positions of the codimension-1 faces of the
    j-th filtration entry, as a sorted index list; faces always precede their
    cofaces, so all row indices are < j.
    """

    columns: List[List[int]]
    dimensions: List[int]

    @property
    def size(self) -> int:
        return len(self.columns)


def boundary_matrix(fc: FilteredComplex) -> BoundaryMatrix:
    """Boundary matrix of a filtered complex in its filtration order."""
    position: Dict[Vertices, int] = {}
    for idx, (simplex, _) in enumerate(fc.entries):
        position[simplex] = idx
    columns: List[List[int]] = []
    dimensions: List[int] = []
    for simplex, _ in fc.entries:
        dim = len(simplex) - 1
        dimensions.append(dim)
        if dim == 0:
            columns.append([])
            continue
        rows = []
        for face in itertools.combinations(simplex, dim):
            pos = position.get(face)
            if pos is None:
                raise ValueError(f"complex is not face-closed: missing face {face}")
            rows.append(pos)
        rows.sort()
        columns.append(rows)
    return BoundaryMatrix(columns, dimensions)


@dataclass
class Reduction:
    """Result of the standard left-to-right column reduction.

    pairs maps each destroyer column to the creator at its lowest row;
    essential columns are creators never killed. Every filtration entry is
    exactly one of: paired creator, essential creator, or destroyer.
    """

    pairs: List[Tuple[int, int]]  # (creator position, destroyer position)
    essential: List[int]
    reduced_columns: List[List[int]]


def reduce_boundary(bm: BoundaryMatrix) -> Reduction:
    """Standard persistence column reduction.

    Columns of different dimensions never share a pivot, so each dimension is
    reduced independently with rows renumbered within the facet dimension;
    this keeps the bitset columns small. The pairing is identical to a single
    global left-to-right pass.
    """
    size = bm.size
    # Rank of each entry among entries of its own dimension, filtration order.
    local_rank: List[int] = [0] * size
    by_dim: Dict[int, List[int]] = {}
    for j, d in enumerate(bm.dimensions):
        members = by_dim.setdefault(d, [])
        local_rank[j] = len(members)
        members.append(j)

    pairs: List[Tuple[int, int]] = []
    destroyers = set()
    creators = set()
    reduced_columns: List[List[int]] = [[] for _ in range(size)]

    for dim, cols_here in sorted(by_dim.items()):
        if dim == 0:
            continue
        face_positions = by_dim.get(dim - 1, [])
        masks: Dict[int, int] = {}
        pivot: Dict[int, int] = {}  # local low row -> column position
        for j in cols_here:
            c = 0
            for row in bm.columns[j]:
                c |= 1 << local_rank[row]
            while c:
                low = c.bit_length() - 1
                other = pivot.get(low)
                if other is None:
                    pivot[low] = j
                    creator = face_positions[low]
                    pairs.append((creator, j))
                    destroyers.add(j)
                    creators.add(creator)
                    break
                c ^= masks[other]
            masks[j] = c
            if c:
                rows = []
                rest = c
                while rest:
                    low = rest.bit_length() - 1
                    rows.append(face_positions[low])
                    rest ^= 1 << low
                rows.reverse()
                reduced_columns[j] = rows

    essential = [j for j in range(size) if j not in destroyers and j not in creators]
    pairs.sort(key=lambda p: p[1])
    return Reduction(pairs, essential, reduced_columns)


@dataclass(frozen=True)
class PersistencePair:
    """One bar: a class of the given dimension born and dying at scales of
    the filtration parameter; death is +inf for essential classes."""

    dimension: int
    birth: float
    death: float

    @property
    def persistence(self) -> float:
        return self.death - self.birth

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.death)


@dataclass
class PersistenceDiagram:
    """Multiset of persistence pairs up to the largest filtration scale."""

    pairs: List[PersistencePair]
    max_scale: float

    def in_dimension(self, dim: int) -> List[PersistencePair]:
        return [p for p in self.pairs if p.dimension == dim]

    def nonzero_pairs(self) -> List[PersistencePair]:
        """Pairs with positive persistence; zero-length bars are reduction
        artifacts with no topological content."""
        return [p for p in self.pairs if p.persistence > 0]

    def betti_at(self, scale: float, dim: int) -> int:
        """Number of dim-dimensional classes alive at the given scale."""
        return sum(
            1 for p in self.in_dimension(dim) if p.birth <= scale < p.death
        )


def persistence_diagram(fc: FilteredComplex) -> PersistenceDiagram:
    """Persistence pairs of a filtered complex, including zero-length bars."""
    bm = boundary_matrix(fc)
    red = reduce_boundary(bm)
    values = [v for _, v in fc.entries]
    dims = bm.dimensions
    pairs = [
        PersistencePair(dims[i], values[i], values[j]) for i, j in red.pairs
    ]
    pairs += [PersistencePair(dims[i], values[i], math.inf) for i in red.essential]
    pairs.sort(key=lambda p: (p.dimension, p.birth, p.death))
    return PersistenceDiagram(pairs, fc.max_value)


def _gf2_rank(columns: List[int]) -> int:
    """Rank of a GF(2) matrix given as bitmask columns."""
    pivots: Dict[int, int] = {}
    rank = 0
    for c in columns:
        while c:
            low = c.bit_length() - 1
            p = pivots.get(low)
            if p is None:
                pivots[low] = c
                rank += 1
                break
            c ^= p
    return rank


def betti_numbers(sc: SimplicialComplex, up_to: int) -> List[int]:
    """Betti numbers beta_0..beta_up_to of a face-closed complex over GF(2).

    beta_k = dim C_k - rank boundary_k - rank boundary_{k+1}.
    """
    if up_to < 0:
        raise ValueError(f"up_to must be non-negative, got {up_to}")
    index: Dict[int, Dict[Vertices, int]] = {}
    for dim in range(up_to + 2):
        simps = sorted(sc.simplices.get(dim, set()))
        index[dim] = {s: i for i, s in enumerate(simps)}

    ranks: Dict[int, int] = {0: 0}
    for dim in range(1, up_to + 2):
        faces = index[dim - 1]
        cols = []
        for s in index[dim]:
            c = 0
            for face in itertools.combinations(s, dim):
                pos = faces.get(face)
                if pos is None:
                    raise ValueError(f"complex is not face-closed: missing face {face}")
                c |= 1 << pos
            cols.append(c)
        ranks[dim] = _gf2_rank(cols)

    betti = []
    for k in range(up_to + 1):
        n_k = len(index[k])
        betti.append(n_k - ranks[k] - ranks[k + 1])
    return betti
