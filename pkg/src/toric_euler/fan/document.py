from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import List, Optional

import pydantic
import semver

from ._base import Fan

logger = logging.getLogger(__name__)

SUPPORTED_SCHEMA_MAJOR = 1


class FanDocument(pydantic.BaseModel):
    """On-disk representation of a fan.

    Ray indices in ``max_cones`` are 1-based, matching the u_1..u_d labelling
    of rays; they are shifted to 0-based indices by :meth:`to_fan`.
    """

    dim: int = pydantic.Field(gt=0)
    rays: List[List[int]]
    max_cones: List[List[int]]
    name: Optional[str] = None
    schema_version: str = "1.0.0"

    @pydantic.field_validator("schema_version")
    @classmethod
    def _validate_schema_version(cls, value: str) -> str:
        version = semver.Version.parse(value)
        if version.major != SUPPORTED_SCHEMA_MAJOR:
            raise ValueError(
                f"Unsupported fan document schema {value}; expected major version {SUPPORTED_SCHEMA_MAJOR}."
            )
        return value

    @pydantic.field_validator("max_cones")
    @classmethod
    def _validate_one_based(cls, value: List[List[int]]) -> List[List[int]]:
        for cone in value:
            if any(index < 1 for index in cone):
                raise ValueError(f"Cone {cone} has an index below 1; indices are 1-based.")
        return value

    def to_fan(self) -> Fan:
        return Fan(
            dim=self.dim,
            rays=tuple(tuple(ray) for ray in self.rays),
            max_cones=tuple(frozenset(i - 1 for i in cone) for cone in self.max_cones),
            name=self.name,
        )

    @classmethod
    def from_fan(cls, fan: Fan) -> FanDocument:
        return cls(
            dim=fan.dim,
            rays=[list(ray) for ray in fan.rays],
            max_cones=[sorted(i + 1 for i in cone) for cone in fan.max_cones],
            name=fan.name,
        )


def load_fan_document(path: os.PathLike) -> FanDocument:
    logger.debug("Loading fan document from %s", path)
    with open(Path(path), "r", encoding="utf-8") as file:
        return FanDocument.model_validate_json(file.read())


def load_fan(path: os.PathLike) -> Fan:
    return load_fan_document(path).to_fan()
