"""Euler characteristics of O_X(D) from fan data.

For l large enough,

    chi(O_X(D)) = sum over m in {0,1}^d, m != 0, of
                  (-1)^(|m| - d + n) * dim (S/I_Sigma)_(1 - m) * dim S_(l m + a)

where a is the coefficient vector of D. A sufficient l is given by
:func:`ems_bound`; in practice far smaller values already stabilise the sum.
"""

from __future__ import annotations

import itertools
import logging
from typing import Optional

import pydantic
import sympy
from pydantic import ConfigDict, Field

from toric_euler.exceptions import ComputationError
from toric_euler.fan import DivisorLike, Fan, as_coefficients, require_valid_fan
from toric_euler.ideals import FineWeight, complement, fine_weights, irrelevant_ideal, sr_dim, tor_dim
from toric_euler.polytope import dim_S

logger = logging.getLogger(__name__)


class ExponentBound(pydantic.BaseModel):
    """Matrix constants of the ray matrix A and the resulting exponent bound l_min.

    l_min = max(1, ceil(n^2 * max_rho |a_rho| * a * b / c)).
    """

    model_config = ConfigDict(frozen=True)

    a: int = Field(gt=0, description="Largest absolute entry of A")
    b: int = Field(gt=0, description="Largest absolute (n-1) x (n-1) minor of A")
    c: int = Field(gt=0, description="Smallest nonzero absolute n x n minor of A")
    l_min: int = Field(ge=1, description="Exponent bound")


class ChiTraceRow(pydantic.BaseModel):
    model_config = ConfigDict(frozen=True)

    m: FineWeight
    face_indicator: int = Field(ge=0, le=1, description="dim (S/I_Sigma)_(1-m)")
    divisor: tuple[int, ...] = Field(description="Representative l*m + a of the degree l*phi(m) + D")
    dim_s: int = Field(ge=0)
    sign: int
    contribution: int


class ChiTrace(pydantic.BaseModel):
    """Every term of the Euler characteristic sum, with the total."""

    model_config = ConfigDict(frozen=True)

    l: int = Field(ge=1)
    rows: tuple[ChiTraceRow, ...]
    total: int

    def nonzero_rows(self) -> list[ChiTraceRow]:
        return [row for row in self.rows if row.contribution != 0]


def _minors(fan: Fan, size: int) -> list[int]:
    if size == 0:
        return [1]
    matrix = sympy.Matrix(fan.rays)
    return [
        int(matrix.extract(list(rows), list(cols)).det())
        for rows in itertools.combinations(range(fan.d), size)
        for cols in itertools.combinations(range(fan.n), size)
    ]


def ems_bound(fan: Fan, a: DivisorLike) -> ExponentBound:
    """The exponent bound for the divisor a; every minor is computed exactly."""
    fan = require_valid_fan(fan)
    coeffs = as_coefficients(fan, a)
    entry_bound = max(abs(x) for ray in fan.rays for x in ray)
    minor_bound = max(abs(x) for x in _minors(fan, fan.n - 1))
    top_minors = [abs(x) for x in _minors(fan, fan.n) if x != 0]
    if not top_minors:
        raise ComputationError("Every n x n minor of the ray matrix vanishes.")
    smallest = min(top_minors)
    numerator = fan.n**2 * max(abs(x) for x in coeffs) * entry_bound * minor_bound
    l_min = max(1, -(-numerator // smallest))
    logger.debug("Exponent bound: a=%s b=%s c=%s l_min=%s", entry_bound, minor_bound, smallest, l_min)
    return ExponentBound(a=entry_bound, b=minor_bound, c=smallest, l_min=l_min)


def _resolve_l(fan: Fan, coeffs: tuple[int, ...], l: Optional[int]) -> int:
    bound = ems_bound(fan, coeffs).l_min
    if l is None:
        logger.info("Using exponent bound l = %s", bound)
        return bound
    if l < 1:
        raise ValueError(f"l must be a positive integer, got {l}.")
    if l < bound:
        logger.warning("l = %s is below the exponent bound %s; the result may not have stabilised.", l, bound)
    return l


def _sign(fan: Fan, weight: FineWeight) -> int:
    return -1 if (sum(weight) - fan.d + fan.n) % 2 else 1


def _shifted(l: int, weight: FineWeight, coeffs: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(l * m + x for m, x in zip(weight, coeffs))


def chi(fan: Fan, a: DivisorLike, l: Optional[int] = None) -> int:
    """Euler characteristic of O_X(D); l defaults to the exponent bound.

    Weights whose complement is not a face are skipped before any lattice
    points are counted.
    """
    fan = require_valid_fan(fan)
    coeffs = as_coefficients(fan, a)
    l = _resolve_l(fan, coeffs, l)
    total = 0
    for weight in fine_weights(fan.d):
        if not any(weight) or not sr_dim(fan, complement(weight)):
            continue
        total += _sign(fan, weight) * dim_S(fan, _shifted(l, weight, coeffs))
    logger.info("chi(%s, %s) = %s at l = %s", fan.name or "fan", coeffs, total, l)
    return total


def chi_trace(fan: Fan, a: DivisorLike, l: Optional[int] = None) -> ChiTrace:
    """Same sum as :func:`chi`, keeping one row per nonzero weight (dim S is evaluated for every row)."""
    fan = require_valid_fan(fan)
    coeffs = as_coefficients(fan, a)
    l = _resolve_l(fan, coeffs, l)
    rows = []
    for weight in fine_weights(fan.d):
        if not any(weight):
            continue
        indicator = sr_dim(fan, complement(weight))
        divisor = _shifted(l, weight, coeffs)
        value = dim_S(fan, divisor)
        sign = _sign(fan, weight)
        rows.append(
            ChiTraceRow(
                m=weight,
                face_indicator=indicator,
                divisor=divisor,
                dim_s=value,
                sign=sign,
                contribution=sign * indicator * value,
            )
        )
    return ChiTrace(l=l, rows=tuple(rows), total=sum(row.contribution for row in rows))


def chi_via_irrelevant(fan: Fan, a: DivisorLike, l: Optional[int] = None) -> int:
    """Euler characteristic from the Betti numbers of S/B(Sigma), before Alexander duality.

    chi = s_D - sum_i (-1)^i sum_m dim Tor_i(S/B, K)_m * s_(l m + a).
    """
    fan = require_valid_fan(fan)
    coeffs = as_coefficients(fan, a)
    l = _resolve_l(fan, coeffs, l)
    irrelevant = irrelevant_ideal(fan)
    correction = 0
    for i in range(fan.d + 1):
        for weight in fine_weights(fan.d):
            betti = tor_dim(irrelevant, i, weight)
            if betti:
                correction += (-1) ** i * betti * dim_S(fan, _shifted(l, weight, coeffs))
    return dim_S(fan, coeffs) - correction

