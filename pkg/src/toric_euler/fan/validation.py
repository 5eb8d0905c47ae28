from __future__ import annotations

import functools
import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import pydantic
import sympy

from toric_euler.exceptions import FanValidationError
from toric_euler.homology import Complex, reduced_betti

from ._base import Fan, face_complex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Constraint:
    name: str
    constraint: Callable[[Fan], bool]
    fail_msg_handler: Optional[Callable[[Fan], str]] = field(default=None)

    def __call__(self, fan: Fan) -> bool:
        return self.constraint(fan)

    def on_fail(self, fan: Fan) -> str:
        if self.fail_msg_handler:
            return self.fail_msg_handler(fan)
        else:
            return f"Constraint {self.name} failed."


class ConstraintFailure(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True)

    name: str
    message: str


class ValidationReport(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True)

    passed: bool
    failures: tuple[ConstraintFailure, ...] = ()

    def raise_for_failures(self) -> ValidationReport:
        if not self.passed:
            raise FanValidationError(self)
        return self


class FanValidator:
    """Evaluates a list of named fan invariants and collects every violation."""

    def __init__(self, *, constraints: Optional[List[Constraint]] = None) -> None:
        self.constraints = constraints if constraints is not None else default_constraints()

    def add_constraint(self, constraint: Constraint) -> None:
        self.constraints.append(constraint)

    def remove_constraint(self, constraint: Constraint) -> None:
        self.constraints.remove(constraint)

    def evaluate_constraints(self, fan: Fan) -> ValidationReport:
        failures: list[ConstraintFailure] = []
        for constraint in self.constraints:
            if not constraint(fan):
                message = constraint.on_fail(fan)
                logger.debug("Constraint %s failed: %s", constraint.name, message)
                failures.append(ConstraintFailure(name=constraint.name, message=message))
        return ValidationReport(passed=len(failures) == 0, failures=tuple(failures))


def _non_primitive_rays(fan: Fan) -> list[int]:
    return [i for i, ray in enumerate(fan.rays) if math.gcd(*ray) != 1]


def _duplicate_rays(fan: Fan) -> list[tuple[int, ...]]:
    return [ray for ray, count in Counter(fan.rays).items() if count > 1]


def _wrong_size_cones(fan: Fan) -> list[list[int]]:
    return [sorted(cone) for cone in fan.max_cones if len(cone) != fan.n]


def _dependent_cones(fan: Fan) -> list[list[int]]:
    dependent = []
    for cone in fan.max_cones:
        generators = sympy.Matrix([fan.rays[i] for i in sorted(cone)])
        if generators.rank() != len(cone):
            dependent.append(sorted(cone))
    return dependent


def _bad_ridges(fan: Fan) -> dict[tuple[int, ...], int]:
    incidences: Counter[tuple[int, ...]] = Counter()
    for cone in fan.max_cones:
        for ridge in itertools.combinations(sorted(cone), len(cone) - 1):
            incidences[ridge] += 1
    return {ridge: count for ridge, count in incidences.items() if count != 2}


def _sphere_defect(fan: Fan) -> Optional[dict[int, int]]:
    """Returns the nonzero reduced Betti numbers when P_Sigma is not a rational (n-1)-sphere."""
    complex_ = Complex.from_faces(range(fan.d), face_complex(fan).facets)
    betti = reduced_betti(complex_)
    expected = {fan.n - 1: 1}
    return None if betti.nonzero() == expected else betti.nonzero()


def primitive_rays_constraint_factory() -> Constraint:
    return Constraint(
        name="primitive_rays",
        constraint=lambda fan: len(_non_primitive_rays(fan)) == 0,
        fail_msg_handler=lambda fan: f"Rays {[i + 1 for i in _non_primitive_rays(fan)]} are not primitive.",
    )


def distinct_rays_constraint_factory() -> Constraint:
    return Constraint(
        name="distinct_rays",
        constraint=lambda fan: len(_duplicate_rays(fan)) == 0,
        fail_msg_handler=lambda fan: f"Rays {_duplicate_rays(fan)} occur more than once.",
    )


def simplicial_cones_constraint_factory() -> Constraint:
    return Constraint(
        name="simplicial_cones",
        constraint=lambda fan: len(_wrong_size_cones(fan)) == 0,
        fail_msg_handler=lambda fan: (
            f"Cones {[[i + 1 for i in c] for c in _wrong_size_cones(fan)]} do not have exactly {fan.n} rays."
        ),
    )


def independent_cones_constraint_factory() -> Constraint:
    return Constraint(
        name="independent_cones",
        constraint=lambda fan: len(_dependent_cones(fan)) == 0,
        fail_msg_handler=lambda fan: (
            f"Cones {[[i + 1 for i in c] for c in _dependent_cones(fan)]} have linearly dependent generators."
        ),
    )


def ridge_constraint_factory() -> Constraint:
    return Constraint(
        name="ridge_condition",
        constraint=lambda fan: len(_bad_ridges(fan)) == 0,
        fail_msg_handler=lambda fan: "Ridges not shared by exactly two maximal cones: "
        + ", ".join(f"{[i + 1 for i in ridge]} (in {count})" for ridge, count in sorted(_bad_ridges(fan).items())),
    )


def sphere_constraint_factory() -> Constraint:
    return Constraint(
        name="sphere_homology",
        constraint=lambda fan: _sphere_defect(fan) is None,
        fail_msg_handler=lambda fan: (
            f"Face complex is not a rational {fan.n - 1}-sphere; nonzero reduced Betti numbers {_sphere_defect(fan)}."
        ),
    )


def default_constraints() -> List[Constraint]:
    return [
        primitive_rays_constraint_factory(),
        distinct_rays_constraint_factory(),
        simplicial_cones_constraint_factory(),
        independent_cones_constraint_factory(),
        ridge_constraint_factory(),
        sphere_constraint_factory(),
    ]


def validate_fan(fan: Fan) -> ValidationReport:
    """Checks the complete simplicial fan invariants.

    Completeness is approximated by the ridge condition together with the
    rational homology of the face complex being that of an (n-1)-sphere.
    """
    return _validate_fan(fan)


@functools.lru_cache(maxsize=128)
def _validate_fan(fan: Fan) -> ValidationReport:
    report = FanValidator().evaluate_constraints(fan)
    if report.passed:
        logger.debug("Fan %s passed validation.", fan.name or "")
    else:
        logger.info("Fan %s failed validation: %s", fan.name or "", [f.name for f in report.failures])
    return report


def require_valid_fan(fan: Fan) -> Fan:
    validate_fan(fan).raise_for_failures()
    return fan
