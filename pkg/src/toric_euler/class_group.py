"""The class group Cl(X_Sigma) = Z^d / im(psi), presented through a Smith normal form.

Classes are expressed in Smith coordinates: if U A V = D with U, V
unimodular, a divisor vector a has coordinates y = U a; the first r entries
are read modulo the invariant factors and the remaining d - r entries form
the free part. Only coordinates with an invariant factor above 1 are kept as
torsion.
"""

from __future__ import annotations

import functools
import logging
from typing import Sequence, Tuple

import numpy as np
import pydantic
import sympy
from pydantic import ConfigDict, Field

from toric_euler.fan import Fan, WeilDivisor, require_valid_fan

logger = logging.getLogger(__name__)

IntMatrix = tuple[tuple[int, ...], ...]


def _as_object_matrix(A: np.ndarray | Sequence[Sequence[int]]) -> np.ndarray:
    matrix = np.array(A, dtype=object)
    if matrix.ndim != 2:
        raise ValueError(f"Expected a 2-dimensional integer matrix, got shape {matrix.shape}.")
    return np.vectorize(int, otypes=[object])(matrix) if matrix.size else matrix


def _swap_rows(M: np.ndarray, i: int, j: int) -> None:
    M[[i, j]] = M[[j, i]]


def _swap_cols(M: np.ndarray, i: int, j: int) -> None:
    M[:, [i, j]] = M[:, [j, i]]


def smith_normal_form(A: np.ndarray | Sequence[Sequence[int]]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form of an integer matrix.

    Args:
        A: an m x k integer matrix.

    Returns:
        A tuple (U, D, V) of object-dtype integer matrices with U @ A @ V == D,
        U and V unimodular, and D diagonal with nonnegative entries
        d_1 | d_2 | ... followed by zeros.
    """
    D = _as_object_matrix(A).copy()
    rows, cols = D.shape
    U = np.eye(rows, dtype=object)
    V = np.eye(cols, dtype=object)
    for t in range(min(rows, cols)):
        while True:
            block = D[t:, t:]
            nonzero = [
                (abs(block[i, j]), i, j)
                for i in range(block.shape[0])
                for j in range(block.shape[1])
                if block[i, j] != 0
            ]
            if not nonzero:
                return U, D, V
            _, i, j = min(nonzero)
            _swap_rows(D, t, t + i)
            _swap_rows(U, t, t + i)
            _swap_cols(D, t, t + j)
            _swap_cols(V, t, t + j)

            pivot = D[t, t]
            clean = True
            for i in range(t + 1, rows):
                q = D[i, t] // pivot
                if q:
                    D[i] -= q * D[t]
                    U[i] -= q * U[t]
                clean &= D[i, t] == 0
            for j in range(t + 1, cols):
                q = D[t, j] // pivot
                if q:
                    D[:, j] -= q * D[:, t]
                    V[:, j] -= q * V[:, t]
                clean &= D[t, j] == 0
            if not clean:
                continue

            # the pivot must divide the rest of the block; otherwise fold an offending row in and retry
            offending = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if D[i, j] % pivot != 0),
                None,
            )
            if offending is None:
                break
            D[t] += D[offending]
            U[t] += U[offending]
        if D[t, t] < 0:
            D[t] *= -1
            U[t] *= -1
    return U, D, V


class ClassGroupPresentation(pydantic.BaseModel):
    """Smith normal form data presenting Cl(X_Sigma) as the cokernel of the ray matrix."""

    model_config = ConfigDict(frozen=True)

    ray_matrix: IntMatrix = Field(description="d x n matrix A with rows v_rho")
    U: IntMatrix = Field(description="d x d unimodular row transform")
    U_inverse: IntMatrix = Field(description="Inverse of U")
    D: IntMatrix = Field(description="d x n diagonal Smith form U A V")
    V: IntMatrix = Field(description="n x n unimodular column transform")
    invariant_factors: tuple[int, ...] = Field(description="Nonzero diagonal entries d_1 | d_2 | ...")

    @property
    def d(self) -> int:
        return len(self.ray_matrix)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def free_rank(self) -> int:
        return self.d - self.rank

    @property
    def torsion_factors(self) -> tuple[int, ...]:
        return tuple(f for f in self.invariant_factors if f > 1)

    @property
    def is_free(self) -> bool:
        return len(self.torsion_factors) == 0


class DivisorClass(pydantic.BaseModel):
    """An element of Cl(X_Sigma) ~ (+) Z/d_i (+) Z^{d - r} in Smith coordinates."""

    model_config = ConfigDict(frozen=True)

    torsion: tuple[int, ...] = Field(default=(), description="Residues modulo the nontrivial invariant factors")
    free: tuple[int, ...] = Field(default=(), description="Free coordinates")

    @property
    def is_zero(self) -> bool:
        return not any(self.torsion) and not any(self.free)


def presentation_from_matrix(A: np.ndarray | Sequence[Sequence[int]]) -> ClassGroupPresentation:
    matrix = _as_object_matrix(A)
    U, D, V = smith_normal_form(matrix)
    U_inverse = sympy.Matrix(U.tolist()).inv()
    diagonal = [D[i, i] for i in range(min(D.shape))]
    factors = tuple(int(x) for x in diagonal if x != 0)
    return ClassGroupPresentation(
        ray_matrix=tuple(tuple(int(x) for x in row) for row in matrix.tolist()),
        U=tuple(tuple(int(x) for x in row) for row in U.tolist()),
        U_inverse=tuple(tuple(int(x) for x in row) for row in U_inverse.tolist()),
        D=tuple(tuple(int(x) for x in row) for row in D.tolist()),
        V=tuple(tuple(int(x) for x in row) for row in V.tolist()),
        invariant_factors=factors,
    )


def class_group_presentation(fan: Fan) -> ClassGroupPresentation:
    return _class_group_presentation(require_valid_fan(fan))


@functools.lru_cache(maxsize=128)
def _class_group_presentation(fan: Fan) -> ClassGroupPresentation:
    presentation = presentation_from_matrix(fan.ray_matrix)
    if presentation.rank != fan.n:
        raise ValueError(f"Ray matrix has rank {presentation.rank} < {fan.n}; psi is not injective.")
    logger.debug(
        "Class group of %s: free rank %s, torsion %s",
        fan.name or "fan",
        presentation.free_rank,
        presentation.torsion_factors,
    )
    return presentation


def class_of(pres: ClassGroupPresentation, a: WeilDivisor | Sequence[int]) -> DivisorClass:
    """The image phi(a) of a divisor vector in Smith coordinates."""
    coeffs = a.coeffs if isinstance(a, WeilDivisor) else tuple(int(x) for x in a)
    if len(coeffs) != pres.d:
        raise ValueError(f"Vector has length {len(coeffs)}, expected {pres.d}.")
    y = np.array(pres.U, dtype=object).dot(np.array(coeffs, dtype=object))
    torsion = tuple(int(y[i] % f) for i, f in enumerate(pres.invariant_factors) if f > 1)
    free = tuple(int(x) for x in y[pres.rank :])
    return DivisorClass(torsion=torsion, free=free)


def _check_class(pres: ClassGroupPresentation, c: DivisorClass) -> None:
    if len(c.torsion) != len(pres.torsion_factors) or len(c.free) != pres.free_rank:
        raise ValueError(
            f"Class has shape ({len(c.torsion)}, {len(c.free)}), "
            f"expected ({len(pres.torsion_factors)}, {pres.free_rank})."
        )


def representative(pres: ClassGroupPresentation, c: DivisorClass) -> tuple[int, ...]:
    """A divisor vector a with class_of(a) == c."""
    _check_class(pres, c)
    residues = iter(c.torsion)
    y = [next(residues) % f if f > 1 else 0 for f in pres.invariant_factors] + list(c.free)
    a = np.array(pres.U_inverse, dtype=object).dot(np.array(y, dtype=object))
    return tuple(int(x) for x in a)


def class_add(pres: ClassGroupPresentation, first: DivisorClass, second: DivisorClass) -> DivisorClass:
    _check_class(pres, first)
    _check_class(pres, second)
    return DivisorClass(
        torsion=tuple((x + y) % f for x, y, f in zip(first.torsion, second.torsion, pres.torsion_factors)),
        free=tuple(x + y for x, y in zip(first.free, second.free)),
    )


def class_neg(pres: ClassGroupPresentation, c: DivisorClass) -> DivisorClass:
    _check_class(pres, c)
    return DivisorClass(
        torsion=tuple((-x) % f for x, f in zip(c.torsion, pres.torsion_factors)),
        free=tuple(-x for x in c.free),
    )


def zero_class(pres: ClassGroupPresentation) -> DivisorClass:
    return DivisorClass(torsion=(0,) * len(pres.torsion_factors), free=(0,) * pres.free_rank)
