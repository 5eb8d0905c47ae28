from __future__ import annotations

import functools
import itertools
import logging
from typing import Iterable, Optional, Sequence

import numpy as np
import pydantic
from pydantic import ConfigDict, Field

logger = logging.getLogger(__name__)


class Fan(pydantic.BaseModel):
    """A complete simplicial fan given by its rays and maximal cones.

    Rays keep their input order and every index used elsewhere in the package
    (cones, ideal generators, fine weights, divisor coefficients) refers to
    that order. Indices are 0-based in Python and 1-based in fan documents.
    """

    model_config = ConfigDict(frozen=True)

    dim: int = Field(gt=0, description="Dimension n of the lattice N")
    rays: tuple[tuple[int, ...], ...] = Field(description="Primitive ray generators v_rho, one per ray")
    max_cones: tuple[frozenset[int], ...] = Field(description="Maximal cones as sets of ray indices")
    name: Optional[str] = Field(default=None, description="Optional label")

    @pydantic.model_validator(mode="after")
    def _check_shape(self) -> Fan:
        if len(self.rays) == 0:
            raise ValueError("A fan needs at least one ray.")
        for i, ray in enumerate(self.rays):
            if len(ray) != self.dim:
                raise ValueError(f"Ray {i} has length {len(ray)}, expected {self.dim}.")
        if len(self.max_cones) == 0:
            raise ValueError("A fan needs at least one maximal cone.")
        for cone in self.max_cones:
            if len(cone) == 0:
                raise ValueError("Maximal cones must be nonempty.")
            out_of_range = [i for i in cone if i < 0 or i >= len(self.rays)]
            if out_of_range:
                raise ValueError(f"Cone {sorted(cone)} references unknown rays {sorted(out_of_range)}.")
        return self

    @property
    def n(self) -> int:
        return self.dim

    @property
    def d(self) -> int:
        return len(self.rays)

    @property
    def ray_matrix(self) -> np.ndarray:
        """The d x n matrix A whose rows are the rays, as exact Python integers."""
        return np.array(self.rays, dtype=object).reshape(self.d, self.n)

    def ray(self, index: int) -> tuple[int, ...]:
        return self.rays[index]


class WeilDivisor(pydantic.BaseModel):
    """D = sum a_rho D_rho, stored as the coefficient vector a."""

    model_config = ConfigDict(frozen=True)

    coeffs: tuple[int, ...]

    def check_length(self, fan: Fan) -> WeilDivisor:
        if len(self.coeffs) != fan.d:
            raise ValueError(f"Divisor has {len(self.coeffs)} coefficients but the fan has {fan.d} rays.")
        return self

    @classmethod
    def zero(cls, fan: Fan) -> WeilDivisor:
        return cls(coeffs=(0,) * fan.d)


DivisorLike = WeilDivisor | Sequence[int]


def as_coefficients(fan: Fan, a: DivisorLike) -> tuple[int, ...]:
    """Normalises a divisor or integer vector into a coefficient tuple of length d."""
    coeffs = a.coeffs if isinstance(a, WeilDivisor) else tuple(int(x) for x in a)
    if len(coeffs) != fan.d:
        raise ValueError(f"Divisor has {len(coeffs)} coefficients but the fan has {fan.d} rays.")
    return coeffs


class FaceComplex(pydantic.BaseModel):
    """The simplicial complex P_Sigma: every subset of a maximal cone, the empty face included."""

    model_config = ConfigDict(frozen=True)

    d: int = Field(ge=0)
    faces: frozenset[frozenset[int]]

    @property
    def facets(self) -> tuple[frozenset[int], ...]:
        return tuple(
            sorted(
                (f for f in self.faces if not any(f < g for g in self.faces)),
                key=lambda f: (len(f), sorted(f)),
            )
        )

    def faces_of_size(self, size: int) -> list[frozenset[int]]:
        return sorted((f for f in self.faces if len(f) == size), key=sorted)


def face_complex(fan: Fan) -> FaceComplex:
    """Enumerates all faces of P_Sigma: the subsets of the maximal cones, deduplicated."""
    return _face_complex(fan)


@functools.lru_cache(maxsize=128)
def _face_complex(fan: Fan) -> FaceComplex:
    faces: set[frozenset[int]] = set()
    for cone in fan.max_cones:
        for size in range(len(cone) + 1):
            faces.update(frozenset(c) for c in itertools.combinations(sorted(cone), size))
    logger.debug("Face complex of %s has %s faces.", fan.name or "fan", len(faces))
    return FaceComplex(d=fan.d, faces=frozenset(faces))


def is_face(complex_: FaceComplex, subset: Iterable[int]) -> bool:
    subset = frozenset(subset)
    out_of_range = [i for i in subset if i < 0 or i >= complex_.d]
    if out_of_range:
        raise ValueError(f"Indices {sorted(out_of_range)} are outside 0..{complex_.d - 1}.")
    return subset in complex_.faces
