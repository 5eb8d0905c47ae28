import contextlib
import io
import logging
import random
import sys
from typing import Iterator

from toric_euler.fan import Fan, library_fan
from toric_euler.fan.library import LIBRARY_FANS

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())
logging.disable(logging.CRITICAL)

H2_DIVISOR = (0, 0, 3, -5)


def bundled_fans() -> Iterator[tuple[str, Fan]]:
    for name in LIBRARY_FANS:
        yield name, library_fan(name)


def random_divisors(fan: Fan, count: int, bound: int, seed: int = 0) -> list[tuple[int, ...]]:
    rng = random.Random(f"{fan.name}-{seed}")
    return [tuple(rng.randint(-bound, bound) for _ in range(fan.d)) for _ in range(count)]


def linearly_equivalent(fan: Fan, a: tuple[int, ...], m: tuple[int, ...]) -> tuple[int, ...]:
    """a + A m, a divisor in the same class as a."""
    return tuple(x + sum(v * y for v, y in zip(ray, m)) for x, ray in zip(a, fan.rays))


@contextlib.contextmanager
def suppress_stdout():
    original_stdout = sys.stdout
    sys.stdout = io.StringIO()
    try:
        yield
    finally:
        sys.stdout = original_stdout
