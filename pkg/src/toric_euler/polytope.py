"""Graded pieces of the Cox ring as lattice points of divisor polytopes.

For a divisor a on a complete fan, dim S_[a] = #{m in M : <m, v_rho> >= -a_rho
for all rho}. Vertices are found exactly by solving every invertible n x n
subsystem; lattice points are then counted inside the integer bounding box.
The first n - 1 box coordinates are enumerated explicitly and the admissible
values of the last coordinate are counted as an interval, which keeps the
count exact while touching far fewer candidates.
"""

from __future__ import annotations

import functools
import itertools
import logging
import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import pydantic
import sympy
from pydantic import ConfigDict, Field

from toric_euler.exceptions import ComputationError, UnboundedPolyhedronError
from toric_euler.fan import DivisorLike, Fan, as_coefficients, require_valid_fan

logger = logging.getLogger(__name__)

RationalPoint = tuple[Fraction, ...]
Box = tuple[tuple[int, int], ...]

MAX_ENUMERATED_POINTS = 20_000_000

# Intermediate values at or above this magnitude switch enumeration to exact Python integers.
INT64_SAFE_MAGNITUDE = 2**62


class DivisorPolyhedron(pydantic.BaseModel):
    """The system <m, v_rho> >= -a_rho with its rational vertices and integer bounding box."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    normals: tuple[tuple[int, ...], ...] = Field(description="Inequality normals v_rho")
    bounds: tuple[int, ...] = Field(description="Right-hand sides -a_rho")
    vertices: tuple[RationalPoint, ...] = Field(description="Rational vertices; empty for an empty polytope")
    box: Optional[Box] = Field(default=None, description="Integer bounding box, None when empty")

    @property
    def dim(self) -> int:
        return len(self.normals[0])

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0

    def contains(self, point: Sequence[int | Fraction]) -> bool:
        return all(
            sum(v * x for v, x in zip(normal, point)) >= bound for normal, bound in zip(self.normals, self.bounds)
        )


def _to_fraction(value: sympy.Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def arrangement_vertices(rays: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[RationalPoint]:
    """Solutions of every invertible n x n subsystem <m, v_rho> = rhs_rho, deduplicated."""
    n = len(rays[0])
    points: set[RationalPoint] = set()
    for rows in itertools.combinations(range(len(rays)), n):
        system = sympy.Matrix([rays[r] for r in rows])
        if system.det() == 0:
            continue
        solution = system.LUsolve(sympy.Matrix([rhs[r] for r in rows]))
        points.add(tuple(_to_fraction(x) for x in solution))
    return sorted(points)


@functools.lru_cache(maxsize=128)
def recession_directions(rays: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
    """Nonzero integer directions w with <w, v_rho> >= 0 for every ray.

    Candidates are the null directions of (n - 1)-row subsystems of rank
    n - 1, together with the kernel of the full ray matrix. An empty result
    means the rays positively span the space, i.e. every divisor polytope
    is bounded.
    """
    n = len(rays[0])
    matrix = sympy.Matrix(rays)
    candidates = list(matrix.nullspace())
    for rows in itertools.combinations(range(len(rays)), n - 1):
        sub = sympy.Matrix([rays[r] for r in rows]) if rows else sympy.zeros(0, n)
        null = sub.nullspace()
        if len(null) == 1:
            candidates.append(null[0])
    directions = []
    for candidate in candidates:
        scale = functools.reduce(sympy.ilcm, [sympy.Rational(x).q for x in candidate], 1)
        w = tuple(int(x * scale) for x in candidate)
        for signed in (w, tuple(-x for x in w)):
            if all(sum(v * x for v, x in zip(ray, signed)) >= 0 for ray in rays):
                directions.append(signed)
    return directions


def _bounding_box(vertices: Sequence[RationalPoint]) -> Box:
    n = len(vertices[0])
    return tuple(
        (math.floor(min(v[i] for v in vertices)), math.ceil(max(v[i] for v in vertices))) for i in range(n)
    )


def divisor_polytope(fan: Fan, a: DivisorLike) -> DivisorPolyhedron:
    """P_D for the divisor a: vertices, bounding box and the defining inequalities."""
    fan = require_valid_fan(fan)
    coeffs = as_coefficients(fan, a)
    return _divisor_polytope(fan.rays, coeffs)


@functools.lru_cache(maxsize=4096)
def _divisor_polytope(rays: tuple[tuple[int, ...], ...], coeffs: tuple[int, ...]) -> DivisorPolyhedron:
    unbounded = recession_directions(rays)
    if unbounded:
        raise UnboundedPolyhedronError(
            f"Divisor polyhedron is unbounded along {unbounded[0]}; the rays do not span a complete fan."
        )
    bounds = tuple(-x for x in coeffs)
    polyhedron = DivisorPolyhedron(normals=rays, bounds=bounds, vertices=())
    vertices = tuple(v for v in arrangement_vertices(rays, bounds) if polyhedron.contains(v))
    box = _bounding_box(vertices) if vertices else None
    return DivisorPolyhedron(normals=rays, bounds=bounds, vertices=vertices, box=box)


def integer_dtype(magnitude: int) -> type:
    """np.int64 while every intermediate value stays below INT64_SAFE_MAGNITUDE, else object (exact ints)."""
    if magnitude < INT64_SAFE_MAGNITUDE:
        return np.int64
    logger.debug("Values up to %s exceed machine integers; enumerating with exact integers.", magnitude)
    return object


def integer_grid(box: Box, dtype: type) -> np.ndarray:
    """Every integer point of ``box`` as the rows of a (points, len(box)) array."""
    if not box:
        return np.zeros((1, 0), dtype=dtype)
    if dtype is object:
        axes = [np.array(range(lo, hi + 1), dtype=object) for lo, hi in box]
    else:
        axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in box]
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(box))


def count_lattice_points(p: DivisorPolyhedron, max_points: int = MAX_ENUMERATED_POINTS) -> int:
    """Exact number of integer points of a bounded divisor polyhedron."""
    if p.is_empty or p.box is None:
        return 0
    prefix_box, (last_lo, last_hi) = p.box[:-1], p.box[-1]
    candidates = math.prod(hi - lo + 1 for lo, hi in prefix_box)
    if candidates > max_points:
        raise ComputationError(f"Bounding box has {candidates} candidate points, above the limit of {max_points}.")

    largest_coordinate = max(abs(x) for interval in p.box for x in interval)
    largest_normal = max(abs(x) for normal in p.normals for x in normal)
    dtype = integer_dtype(
        max(abs(x) for x in p.bounds)
        + p.dim * largest_coordinate * largest_normal
        + candidates * (last_hi - last_lo + 1)
    )
    normals = np.array(p.normals, dtype=dtype)
    bounds = np.array(p.bounds, dtype=dtype)
    grid = integer_grid(prefix_box, dtype)

    # remaining slack for the last coordinate: normals[:, -1] * x_last >= bounds - <prefix, normals[:, :-1]>
    if prefix_box:
        slack = bounds[None, :] - grid @ normals[:, :-1].T
    else:
        slack = bounds[None, :].copy()
    lower = np.full(grid.shape[0], last_lo, dtype=dtype)
    upper = np.full(grid.shape[0], last_hi, dtype=dtype)
    feasible = np.ones(grid.shape[0], dtype=bool)
    for rho, normal in enumerate(p.normals):
        coefficient = normal[-1]
        if coefficient > 0:
            lower = np.maximum(lower, -((-slack[:, rho]) // coefficient))
        elif coefficient < 0:
            upper = np.minimum(upper, slack[:, rho] // coefficient)
        else:
            feasible &= np.asarray(slack[:, rho] <= 0, dtype=bool)
    counts = np.where(feasible, np.maximum(upper - lower + 1, 0), 0)
    return int(counts.sum())


def dim_S(fan: Fan, a: DivisorLike) -> int:
    """dim S_alpha for the class alpha of a; depends only on the class of a."""
    fan = require_valid_fan(fan)
    coeffs = as_coefficients(fan, a)
    return _dim_S(fan.rays, coeffs)


@functools.lru_cache(maxsize=16384)
def _dim_S(rays: tuple[tuple[int, ...], ...], coeffs: tuple[int, ...]) -> int:
    count = count_lattice_points(_divisor_polytope(rays, coeffs))
    logger.debug("dim S at %s = %s", coeffs, count)
    return count
