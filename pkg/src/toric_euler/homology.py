"""Reduced simplicial homology over the rationals.

Ranks are computed exactly from integer boundary matrices. Two degenerate
complexes are distinguished: the *empty* complex, whose only face is the
empty set and which has reduced homology of rank 1 in degree -1, and the
*void* complex, which has no faces and no homology at all.
"""

from __future__ import annotations

import functools
import itertools
import logging
from typing import Iterable, Optional

import pydantic
import sympy
from pydantic import ConfigDict, Field

logger = logging.getLogger(__name__)


class Complex(pydantic.BaseModel):
    """A simplicial complex given by its facets on a fixed vertex ground set."""

    model_config = ConfigDict(frozen=True)

    vertices: frozenset[int] = Field(description="Vertex ground set")
    facets: frozenset[frozenset[int]] = Field(description="Maximal faces; empty for the void complex")

    @pydantic.model_validator(mode="after")
    def _check_facets(self) -> Complex:
        for facet in self.facets:
            if not facet <= self.vertices:
                raise ValueError(f"Facet {sorted(facet)} is not contained in the vertex set.")
            if any(facet < other for other in self.facets):
                raise ValueError(f"Facets must form an antichain; {sorted(facet)} is not maximal.")
        return self

    @classmethod
    def from_faces(cls, vertices: Iterable[int], faces: Iterable[Iterable[int]]) -> Complex:
        """Builds a complex from any generating family of faces by keeping the maximal ones."""
        candidates = {frozenset(f) for f in faces}
        facets = frozenset(f for f in candidates if not any(f < g for g in candidates))
        return cls(vertices=frozenset(vertices), facets=facets)

    @classmethod
    def void(cls, vertices: Iterable[int] = ()) -> Complex:
        return cls(vertices=frozenset(vertices), facets=frozenset())

    @classmethod
    def empty(cls, vertices: Iterable[int] = ()) -> Complex:
        return cls(vertices=frozenset(vertices), facets=frozenset([frozenset()]))

    @property
    def is_void(self) -> bool:
        return len(self.facets) == 0

    @property
    def dimension(self) -> Optional[int]:
        """Largest face dimension, -1 for the empty complex and None for the void complex."""
        if self.is_void:
            return None
        return max(len(f) for f in self.facets) - 1

    def faces(self) -> set[frozenset[int]]:
        out: set[frozenset[int]] = set()
        for facet in self.facets:
            ordered = sorted(facet)
            for size in range(len(ordered) + 1):
                out.update(frozenset(c) for c in itertools.combinations(ordered, size))
        return out

    def faces_by_dimension(self) -> dict[int, list[tuple[int, ...]]]:
        """Faces as sorted tuples, keyed by dimension (the empty face has dimension -1)."""
        grouped: dict[int, list[tuple[int, ...]]] = {}
        for face in self.faces():
            grouped.setdefault(len(face) - 1, []).append(tuple(sorted(face)))
        for faces in grouped.values():
            faces.sort()
        return grouped

    def contains(self, subset: Iterable[int]) -> bool:
        subset = frozenset(subset)
        return any(subset <= facet for facet in self.facets)


class BettiVector(pydantic.BaseModel):
    """Ranks of reduced homology; ``ranks[k]`` is the rank of H~_{k-1}."""

    model_config = ConfigDict(frozen=True)

    ranks: tuple[int, ...] = Field(default=(), description="Ranks of H~_i for i = -1 .. dim")

    def __getitem__(self, degree: int) -> int:
        index = degree + 1
        if index < 0 or index >= len(self.ranks):
            return 0
        return self.ranks[index]

    @property
    def euler_characteristic(self) -> int:
        """Alternating sum of reduced Betti numbers, sum_i (-1)^i rank H~_i."""
        return sum((-1) ** (k - 1) * rank for k, rank in enumerate(self.ranks))

    def nonzero(self) -> dict[int, int]:
        return {k - 1: rank for k, rank in enumerate(self.ranks) if rank != 0}


def reduced_euler_characteristic(complex_: Complex) -> int:
    """sum over faces (including the empty face) of (-1)^dim; 0 for the void complex."""
    return sum((-1) ** dim * len(faces) for dim, faces in complex_.faces_by_dimension().items())


def boundary_matrix(
    faces: list[tuple[int, ...]], subfaces: list[tuple[int, ...]]
) -> sympy.Matrix:
    """Matrix of the simplicial boundary from ``faces`` (columns) to ``subfaces`` (rows)."""
    row_of = {face: i for i, face in enumerate(subfaces)}
    matrix = sympy.zeros(len(subfaces), len(faces))
    for j, face in enumerate(faces):
        for position in range(len(face)):
            matrix[row_of[face[:position] + face[position + 1 :]], j] = (-1) ** position
    return matrix


def _rank(matrix: sympy.Matrix) -> int:
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return matrix.rank()


def reduced_betti(complex_: Complex) -> BettiVector:
    """Ranks of the reduced homology of a complex over Q."""
    return _reduced_betti(complex_)


@functools.lru_cache(maxsize=4096)
def _reduced_betti(complex_: Complex) -> BettiVector:
    if complex_.is_void:
        return BettiVector(ranks=())
    top = complex_.dimension
    assert top is not None
    faces = complex_.faces_by_dimension()
    # rank of the boundary leaving dimension k; the augmentation is the boundary of dimension 0
    boundary_ranks = {-1: 0, top + 1: 0}
    for k in range(0, top + 1):
        boundary_ranks[k] = _rank(boundary_matrix(faces.get(k, []), faces.get(k - 1, [])))
    ranks = tuple(
        len(faces.get(k, [])) - boundary_ranks[k] - boundary_ranks[k + 1] for k in range(-1, top + 1)
    )
    logger.debug("Reduced Betti numbers of %s facets: %s", len(complex_.facets), ranks)
    return BettiVector(ranks=ranks)


def induced_subcomplex(complex_: Complex, vertex_subset: Iterable[int]) -> Complex:
    """The faces of ``complex_`` contained in ``vertex_subset``, on that ground set."""
    subset = frozenset(vertex_subset)
    outside = subset - complex_.vertices
    if outside:
        raise ValueError(f"Vertices {sorted(outside)} are not in the ground set.")
    if complex_.is_void:
        return Complex.void(subset)
    return Complex.from_faces(subset, (facet & subset for facet in complex_.facets))
