from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Callable, Optional, Sequence

import pydantic

from toric_euler import __version__, logging_helper
from toric_euler.class_group import DivisorClass, class_group_presentation, class_of
from toric_euler.cohomology import cohomology_dims
from toric_euler.euler import ChiTrace, chi, chi_trace
from toric_euler.exceptions import ComputationError, FanValidationError
from toric_euler.fan import Fan, resolve_fan, validate_fan
from toric_euler.fan.validation import ConstraintFailure
from toric_euler.ideals import alexander_dual, chow_presentation, irrelevant_ideal, stanley_reisner
from toric_euler.polytope import dim_S
from toric_euler.ui_helper import UIHelper

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MALFORMED_INPUT = 2
EXIT_VALIDATION_FAILURE = 3
EXIT_COMPUTATION_ERROR = 4


@pydantic.dataclasses.dataclass
class _CliArgs:
    command: str
    fan: str
    divisor: Optional[tuple[int, ...]] = None
    l: Optional[int] = pydantic.Field(default=None, ge=1)
    json: bool = False
    trace: bool = False
    per_degree: bool = False
    debug: bool = False
    log_file: Optional[os.PathLike] = None

    @pydantic.field_validator("divisor", mode="before")
    @classmethod
    def _parse_divisor(cls, v):
        if isinstance(v, str):
            v = cls._split_divisor(v)
        return v

    @staticmethod
    def _split_divisor(value: str) -> tuple[int, ...]:
        parts = [p.strip() for p in value.split(",")]
        if not all(parts):
            raise ValueError(f"Divisor {value!r} must be a comma-separated list of integers.")
        return tuple(int(p) for p in parts)

    def require_divisor(self, fan: Fan) -> tuple[int, ...]:
        if self.divisor is None:
            raise ValueError(f"The {self.command} command needs --divisor with {fan.d} comma-separated integers.")
        if len(self.divisor) != fan.d:
            raise ValueError(f"Divisor has {len(self.divisor)} coefficients but the fan has {fan.d} rays.")
        return self.divisor


def _get_default_arg_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("fan", help="Path to a fan document, or the name of a bundled fan")
    common.add_argument("--json", help="Print machine-readable JSON", action="store_true", default=False)
    common.add_argument("--divisor", help="Divisor coefficients a1,...,ad (use --divisor=-1,0,0 for a leading minus)")
    common.add_argument("--l", help="Exponent l; defaults to the computed bound", type=int, default=None)
    common.add_argument("--trace", help="Print every term of the Euler characteristic sum", action="store_true")
    common.add_argument("--per-degree", help="List the lattice points contributing to cohomology", action="store_true")
    common.add_argument("--debug", help="Log per-term computation details", action="store_true", default=False)
    common.add_argument("--log-file", help="Also write the log to this file", default=None)

    parser = argparse.ArgumentParser(
        prog="toric-euler", description="Euler characteristics of rank one reflexive sheaves on toric varieties."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("validate", parents=[common], help="Check the complete simplicial fan invariants")
    subparsers.add_parser("ideals", parents=[common], help="Stanley-Reisner ideal, irrelevant ideal and duals")
    subparsers.add_parser("class-group", parents=[common], help="Free rank and invariant factors of Cl(X)")
    subparsers.add_parser("chow", parents=[common], help="Generators of the rational Chow ring")
    subparsers.add_parser("dim", parents=[common], help="Number of monomials in the class of a divisor")
    subparsers.add_parser("chi", parents=[common], help="Euler characteristic of O_X(D)")
    subparsers.add_parser("cohomology", parents=[common], help="All cohomology dimensions of O_X(D)")
    return parser


def _parse_args(argv: Optional[Sequence[str]]) -> _CliArgs:
    parsed = _get_default_arg_parser().parse_args(argv)
    return _CliArgs(**vars(parsed))


def _one_based(supports: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(i + 1 for i in s) for s in supports)


class _ValidateRecord(pydantic.BaseModel):
    name: Optional[str] = None
    passed: bool
    failures: tuple[ConstraintFailure, ...] = ()


class _IdealsRecord(pydantic.BaseModel):
    stanley_reisner: tuple[tuple[int, ...], ...]
    irrelevant: tuple[tuple[int, ...], ...]
    stanley_reisner_dual: tuple[tuple[int, ...], ...]
    dual_equals_irrelevant: bool


class _ClassGroupRecord(pydantic.BaseModel):
    free_rank: int
    invariant_factors: tuple[int, ...]
    torsion_factors: tuple[int, ...]
    divisor_class: Optional[DivisorClass] = pydantic.Field(default=None, serialization_alias="class")


class _ChowRecord(pydantic.BaseModel):
    stanley_reisner: tuple[tuple[int, ...], ...]
    linear_forms: tuple[tuple[int, ...], ...]


class _DimRecord(pydantic.BaseModel):
    divisor: tuple[int, ...]
    dim: int


class _ChiRecord(pydantic.BaseModel):
    divisor: tuple[int, ...]
    chi: int
    trace: Optional[ChiTrace] = None


class _LatticePointRecord(pydantic.BaseModel):
    point: tuple[int, ...]
    negative_rays: tuple[int, ...] = pydantic.Field(description="1-based")
    betti: dict[int, int] = pydantic.Field(description="Nonzero reduced Betti numbers by degree")


class _CohomologyRecord(pydantic.BaseModel):
    divisor: tuple[int, ...]
    h: tuple[int, ...]
    chi: int
    per_degree: Optional[tuple[_LatticePointRecord, ...]] = None


class _Runner:
    """Executes one parsed command and renders its result."""

    def __init__(self, args: _CliArgs, ui_helper: UIHelper) -> None:
        self.args = args
        self.ui = ui_helper

    def _emit(self, record: pydantic.BaseModel, human: Callable[[], None]) -> None:
        if self.args.json:
            self.ui.print_line(record.model_dump_json(by_alias=True, exclude_none=True))
        else:
            human()

    def run(self) -> int:
        fan = resolve_fan(self.args.fan)
        handler = getattr(self, "_" + self.args.command.replace("-", "_"))
        if self.args.command != "validate":
            validate_fan(fan).raise_for_failures()
        return handler(fan)

    def _validate(self, fan: Fan) -> int:
        report = validate_fan(fan)
        record = _ValidateRecord(name=fan.name, passed=report.passed, failures=report.failures)

        def human() -> None:
            if report.passed:
                self.ui.print_line(f"{fan.name or self.args.fan}: valid")
            for failure in report.failures:
                self.ui.print_line(f"{failure.name}: {failure.message}")

        self._emit(record, human)
        return EXIT_OK if report.passed else EXIT_VALIDATION_FAILURE

    def _ideals(self, fan: Fan) -> int:
        sr = stanley_reisner(fan)
        irrelevant = irrelevant_ideal(fan)
        sr_dual = alexander_dual(sr)
        record = _IdealsRecord(
            stanley_reisner=_one_based(sr.sorted_gens()),
            irrelevant=_one_based(irrelevant.sorted_gens()),
            stanley_reisner_dual=_one_based(sr_dual.sorted_gens()),
            dual_equals_irrelevant=sr_dual == irrelevant,
        )

        def human() -> None:
            self.ui.print_supports("I_Sigma", sr.sorted_gens())
            self.ui.print_supports("B(Sigma)", irrelevant.sorted_gens())
            self.ui.print_supports("I_Sigma dual", sr_dual.sorted_gens())

        self._emit(record, human)
        return EXIT_OK

    def _class_group(self, fan: Fan) -> int:
        presentation = class_group_presentation(fan)
        divisor_class = None
        if self.args.divisor is not None:
            divisor_class = class_of(presentation, self.args.require_divisor(fan))
        record = _ClassGroupRecord(
            free_rank=presentation.free_rank,
            invariant_factors=presentation.invariant_factors,
            torsion_factors=presentation.torsion_factors,
            divisor_class=divisor_class,
        )

        def human() -> None:
            self.ui.print_line(f"free_rank: {presentation.free_rank}")
            self.ui.print_line(f"invariant_factors: {self.ui.format_vector(presentation.invariant_factors, ' ')}")
            if divisor_class is not None:
                self.ui.print_line(
                    f"class: torsion=({self.ui.format_vector(divisor_class.torsion)}) "
                    f"free=({self.ui.format_vector(divisor_class.free)})"
                )

        self._emit(record, human)
        return EXIT_OK

    def _chow(self, fan: Fan) -> int:
        chow = chow_presentation(fan)
        record = _ChowRecord(
            stanley_reisner=_one_based(chow.stanley_reisner_gens),
            linear_forms=chow.linear_forms,
        )

        def human() -> None:
            self.ui.print_supports("I_Sigma", chow.stanley_reisner_gens)
            self.ui.print_line("linear_forms:")
            for form in chow.linear_forms:
                self.ui.print_line(self.ui.format_vector(form, " "))

        self._emit(record, human)
        return EXIT_OK

    def _dim(self, fan: Fan) -> int:
        divisor = self.args.require_divisor(fan)
        value = dim_S(fan, divisor)
        self._emit(_DimRecord(divisor=divisor, dim=value), lambda: self.ui.print_line(str(value)))
        return EXIT_OK

    def _chi(self, fan: Fan) -> int:
        divisor = self.args.require_divisor(fan)
        if not self.args.trace:
            value = chi(fan, divisor, self.args.l)
            self._emit(_ChiRecord(divisor=divisor, chi=value), lambda: self.ui.print_line(str(value)))
            return EXIT_OK

        trace = chi_trace(fan, divisor, self.args.l)

        def human() -> None:
            self.ui.print_table(
                ("m", "face", "divisor", "dim_S", "sign", "contribution"),
                [
                    (
                        self.ui.format_vector(row.m),
                        row.face_indicator,
                        self.ui.format_vector(row.divisor),
                        row.dim_s,
                        row.sign,
                        row.contribution,
                    )
                    for row in trace.rows
                ],
            )
            for row in trace.rows:
                self.ui.print_line(row.model_dump_json())
            self.ui.print_line(f"l: {trace.l}")
            self.ui.print_line(str(trace.total))

        self._emit(_ChiRecord(divisor=divisor, chi=trace.total, trace=trace), human)
        return EXIT_OK

    def _cohomology(self, fan: Fan) -> int:
        divisor = self.args.require_divisor(fan)
        result = cohomology_dims(fan, divisor, per_degree=self.args.per_degree)
        per_degree = None
        if result.per_degree is not None:
            per_degree = tuple(
                _LatticePointRecord(
                    point=c.point,
                    negative_rays=tuple(rho + 1 for rho in c.negative_rays),
                    betti=c.betti.nonzero(),
                )
                for c in result.per_degree
            )
        record = _CohomologyRecord(divisor=divisor, h=result.h, chi=result.euler_characteristic, per_degree=per_degree)

        def human() -> None:
            self.ui.print_line(self.ui.format_vector(result.h, " "))
            self.ui.print_line(f"chi: {result.euler_characteristic}")
            if per_degree is not None:
                self.ui.print_table(
                    ("m", "negative rays", "reduced betti"),
                    [
                        (
                            self.ui.format_vector(c.point),
                            self.ui.format_vector(c.negative_rays) or "-",
                            " ".join(f"H~{k}={v}" for k, v in c.betti.items()),
                        )
                        for c in per_degree
                    ],
                )

        self._emit(record, human)
        return EXIT_OK


def run(argv: Optional[Sequence[str]] = None, ui_helper: Optional[UIHelper] = None) -> int:
    """Parses ``argv``, runs the selected command and returns its exit code."""
    try:
        args = _parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    except (ValueError, TypeError) as e:
        logger.error("Invalid arguments: %s", e)
        return EXIT_MALFORMED_INPUT

    package_logger = logging_helper.configure_package_logger(debug=args.debug, log_file=args.log_file)
    try:
        return _Runner(args, ui_helper or UIHelper()).run()
    except FanValidationError as e:
        logger.error("%s", e)
        for failure in e.report.failures:
            logger.error("%s: %s", failure.name, failure.message)
        return EXIT_VALIDATION_FAILURE
    except ComputationError as e:
        logger.error("Computation failed: %s", e)
        return EXIT_COMPUTATION_ERROR
    except (ValueError, OSError) as e:
        logger.error("Malformed input: %s", e)
        return EXIT_MALFORMED_INPUT
    finally:
        logging_helper.close_file_handlers(package_logger)


def main(argv: Optional[Sequence[str]] = None) -> None:
    code = run(argv)
    logger.debug("Exiting with code %s", code)
    sys.exit(code)
