"""Cohomology of O_X(D) degree by degree in M.

For m in M let V_m = {rho : <m, v_rho> < -a_rho}. Then

    h^i(O_X(D)) = sum over m of rank H~^(i-1)(P_Sigma restricted to V_m),

with H~^(-1) of the empty complex equal to 1, so the points of P_D make up
h^0. Only finitely many m contribute: the restricted complex is acyclic for
every m outside the bounded chambers of the arrangement <m, v_rho> = -a_rho.
The summation runs over the bounding box of the arrangement vertices,
widened by a margin, and groups lattice points by their sign pattern.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np
import pydantic
from pydantic import ConfigDict, Field

from toric_euler.exceptions import ComputationError
from toric_euler.fan import DivisorLike, Fan, as_coefficients, face_complex, require_valid_fan
from toric_euler.homology import BettiVector, Complex, induced_subcomplex, reduced_betti
from toric_euler.polytope import MAX_ENUMERATED_POINTS, Box, arrangement_vertices, dim_S, integer_dtype, integer_grid

logger = logging.getLogger(__name__)


class LatticePointContribution(pydantic.BaseModel):
    model_config = ConfigDict(frozen=True)

    point: tuple[int, ...] = Field(description="Lattice point m in M")
    negative_rays: tuple[int, ...] = Field(description="Rays with <m, v_rho> < -a_rho, 0-based")
    betti: BettiVector = Field(description="Reduced Betti numbers of the restricted face complex")


class CohomologyVector(pydantic.BaseModel):
    """Dimensions h^0 .. h^n, optionally with the lattice points that produced them."""

    model_config = ConfigDict(frozen=True)

    h: tuple[int, ...]
    per_degree: Optional[tuple[LatticePointContribution, ...]] = None

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * value for i, value in enumerate(self.h))


def enumeration_region(fan: Fan, a: DivisorLike, margin: int = 1) -> Box:
    """Integer bounding box of every vertex of the hyperplane arrangement, widened by ``margin``."""
    if margin < 0:
        raise ValueError(f"Margin must be nonnegative, got {margin}.")
    fan = require_valid_fan(fan)
    coeffs = as_coefficients(fan, a)
    vertices = arrangement_vertices(fan.rays, tuple(-x for x in coeffs))
    if not vertices:
        raise ComputationError("The hyperplane arrangement has no vertices; the ray matrix is not of full rank.")
    return tuple(
        (math.floor(min(v[i] for v in vertices)) - margin, math.ceil(max(v[i] for v in vertices)) + margin)
        for i in range(fan.n)
    )


def _grid(box: Box, dtype: type) -> np.ndarray:
    size = math.prod(hi - lo + 1 for lo, hi in box)
    if size > MAX_ENUMERATED_POINTS:
        raise ComputationError(f"Enumeration region has {size} points, above the limit of {MAX_ENUMERATED_POINTS}.")
    return integer_grid(box, dtype)


def cohomology_dims(fan: Fan, a: DivisorLike, margin: int = 1, per_degree: bool = False) -> CohomologyVector:
    """All h^i(O_X(D)) for i = 0 .. n.

    Args:
        fan: a complete simplicial fan.
        a: coefficients of D.
        margin: number of lattice steps the arrangement bounding box is widened by.
        per_degree: when True, keep every contributing lattice point with its Betti data.
    """
    fan = require_valid_fan(fan)
    coeffs = as_coefficients(fan, a)
    region = enumeration_region(fan, coeffs, margin)
    largest_coordinate = max(abs(x) for interval in region for x in interval)
    largest_ray = max(abs(x) for ray in fan.rays for x in ray)
    dtype = integer_dtype(max(abs(x) for x in coeffs) + fan.n * largest_coordinate * largest_ray)
    points = _grid(region, dtype)
    pairings = points @ np.array(fan.rays, dtype=dtype).T
    negative = np.asarray(pairings < -np.array(coeffs, dtype=dtype)[None, :], dtype=bool)
    patterns, inverse, counts = np.unique(negative, axis=0, return_inverse=True, return_counts=True)
    inverse = inverse.reshape(-1)

    faces = face_complex(fan)
    p_sigma = Complex.from_faces(range(fan.d), faces.facets)
    h = [0] * (fan.n + 1)
    contributing: dict[int, tuple[tuple[int, ...], BettiVector]] = {}
    for index, (pattern, count) in enumerate(zip(patterns, counts)):
        rays = tuple(int(r) for r in np.flatnonzero(pattern))
        betti = reduced_betti(induced_subcomplex(p_sigma, rays))
        if not betti.nonzero():
            continue
        contributing[index] = (rays, betti)
        for i in range(fan.n + 1):
            h[i] += int(count) * betti[i - 1]
    logger.debug(
        "Cohomology of %s at %s: %s points, %s sign patterns, %s contributing",
        fan.name or "fan",
        coeffs,
        len(points),
        len(patterns),
        len(contributing),
    )

    details = None
    if per_degree:
        details = tuple(
            LatticePointContribution(
                point=tuple(int(x) for x in point),
                negative_rays=contributing[int(index)][0],
                betti=contributing[int(index)][1],
            )
            for point, index in zip(points, inverse)
            if int(index) in contributing
        )
    return CohomologyVector(h=tuple(h), per_degree=details)


def h0(fan: Fan, a: DivisorLike) -> int:
    """dim H^0(O_X(D)), the number of lattice points of P_D."""
    return dim_S(fan, a)
