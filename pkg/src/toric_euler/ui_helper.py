import logging
from typing import Any, Callable, Iterable, Sequence

logger = logging.getLogger(__name__)


class UIHelper:
    """Renders plain-text tables and lists through an injectable print function."""

    _print: Callable[[str], None]

    def __init__(self, print_func: Callable[[str], None] = print):
        self._print = print_func

    def print_line(self, text: str) -> None:
        self._print(text)

    @staticmethod
    def format_vector(values: Iterable[Any], sep: str = ",") -> str:
        return sep.join(str(v) for v in values)

    @staticmethod
    def format_support(support: Iterable[int]) -> str:
        """Sorted 1-based ray indices, e.g. ``[1, 3]``; the unit monomial has the empty list."""
        return "[" + ", ".join(str(i + 1) for i in sorted(support)) + "]"

    def make_table(self, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
        cells = [[str(x) for x in header]] + [[str(x) for x in row] for row in rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
        lines = ["  ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in cells]
        lines.insert(1, "  ".join("-" * width for width in widths))
        return "\n".join(lines)

    def print_table(self, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
        self._print(self.make_table(header, rows))

    def print_supports(self, title: str, supports: Iterable[Iterable[int]]) -> None:
        """A ``title:`` line followed by one sorted index list per generator."""
        self._print(f"{title}:")
        for support in supports:
            self._print(self.format_support(support))
