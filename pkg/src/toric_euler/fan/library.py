import functools
import logging
import os
from importlib import resources
from pathlib import Path
from typing import Dict, List

from ._base import Fan
from .document import FanDocument, load_fan

logger = logging.getLogger(__name__)

FAN_SUFFIX = ".fan"

LIBRARY_FANS = (
    "projective_plane",
    "p1xp1",
    "hirzebruch1",
    "hirzebruch2",
    "hirzebruch3",
    "weighted_projective_plane_112",
    "fake_projective_plane",
    "projective_space3",
)


def _data_dir() -> Path:
    return Path(str(resources.files("toric_euler.fan") / "data"))


def available_fans() -> List[str]:
    return sorted(p.stem for p in _data_dir().glob(f"*{FAN_SUFFIX}"))


@functools.lru_cache(maxsize=None)
def library_fan(name: str) -> Fan:
    """Loads a bundled fan by name, with or without the ``.fan`` suffix."""
    stem = name[: -len(FAN_SUFFIX)] if name.endswith(FAN_SUFFIX) else name
    path = _data_dir() / f"{stem}{FAN_SUFFIX}"
    if not path.is_file():
        raise FileNotFoundError(f"No bundled fan named {name}. Available: {', '.join(available_fans())}")
    return load_fan(path)


def library_fans() -> Dict[str, Fan]:
    return {name: library_fan(name) for name in LIBRARY_FANS}


def resolve_fan(path_or_name: os.PathLike | str) -> Fan:
    """Loads a fan from a file path, falling back to the bundled library."""
    path = Path(path_or_name)
    if path.is_file():
        return load_fan(path)
    logger.debug("%s is not a file; looking it up in the bundled library.", path_or_name)
    return library_fan(str(path_or_name))


def fan_document_json(fan: Fan) -> str:
    return FanDocument.from_fan(fan).model_dump_json(indent=2)
