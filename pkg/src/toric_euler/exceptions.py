from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from toric_euler.fan.validation import ValidationReport


class FanValidationError(ValueError):
    """Raised when a fan violates one of the complete simplicial fan invariants."""

    def __init__(self, report: ValidationReport) -> None:
        self.report = report
        failed = ", ".join(failure.name for failure in report.failures)
        super().__init__(f"Fan failed validation: {failed}")


class ComputationError(RuntimeError):
    """Raised when a well-formed input cannot be evaluated."""


class UnboundedPolyhedronError(ComputationError):
    """Raised when a divisor polyhedron has a nonzero recession direction."""
