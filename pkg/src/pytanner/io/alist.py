"""The alist sparse-matrix format.

Layout of a document describing an m x n parity-check matrix::

    n m
    max_column_weight max_row_weight
    column weights (n numbers)
    row weights (m numbers)
    n lines: 1-based CN indices of each column, zero padded
    m lines: 1-based VN indices of each row, zero padded

Writing is canonical (sorted, padded, single spaces, trailing newline).
Reading also accepts unpadded lists and documents without the row lists.
"""

import logging
import os
from pathlib import Path

from pytanner.exceptions import AlistFormatError, TannerValidationError
from pytanner.graph import TannerGraph
from pytanner.utils import atomic_write_text

logger = logging.getLogger(__name__)


def _padded(indices: list[int], width: int) -> str:
    return " ".join(str(i) for i in indices + [0] * (width - len(indices)))


def write_alist(g: TannerGraph) -> str:
    """Return the canonical alist text of `g`."""
    columns = [sorted(c + 1 for c in adj) for adj in g.vn_adjacency]
    rows = [sorted(v + 1 for v in adj) for adj in g.cn_adjacency]
    max_col = max((len(col) for col in columns), default=0)
    max_row = max((len(row) for row in rows), default=0)
    lines = [
        f"{g.n} {g.m}",
        f"{max_col} {max_row}",
        " ".join(str(len(col)) for col in columns),
        " ".join(str(len(row)) for row in rows),
    ]
    lines.extend(_padded(col, max_col) for col in columns)
    lines.extend(_padded(row, max_row) for row in rows)
    return "\n".join(lines) + "\n"


class _Lines:
    """Numbered cursor over the lines of a document."""

    def __init__(self, text: str) -> None:
        self._lines = text.splitlines()
        self.lineno = 0

    def remaining(self) -> int:
        return len(self._lines) - self.lineno

    def trailing(self) -> bool:
        """Return True if a non-blank line follows the cursor."""
        rest = self._lines[self.lineno :]
        for offset, raw in enumerate(rest, start=1):
            if raw.strip():
                self.lineno += offset
                return True
        return False

    def error(self, what: str) -> AlistFormatError:
        msg = f"line {self.lineno}: {what}"
        return AlistFormatError(msg)

    def ints(self, count: None | int = None) -> list[int]:
        if self.lineno >= len(self._lines):
            self.lineno += 1
            msg = "unexpected end of document"
            raise self.error(msg)
        raw = self._lines[self.lineno]
        self.lineno += 1
        try:
            values = [int(token) for token in raw.split()]
        except ValueError:
            msg = f"non-integer entry in {raw.strip()!r}"
            raise self.error(msg) from None
        if count is not None and len(values) != count:
            msg = f"expected {count} numbers, got {len(values)}"
            raise self.error(msg)
        return values

    def index_list(self, weight: int, bound: int, width: int) -> list[int]:
        values = self.ints()
        if len(values) > max(width, weight):
            msg = f"{len(values)} entries exceed the maximum weight {width}"
            raise self.error(msg)
        nonzero = [x for x in values if x]
        if any(values[len(nonzero) :]) or len(nonzero) != weight:
            msg = f"expected {weight} leading non-zero indices"
            raise self.error(msg)
        for x in nonzero:
            if not 1 <= x <= bound:
                msg = f"index {x} is out of range [1, {bound}]"
                raise self.error(msg)
        if len(set(nonzero)) != weight:
            msg = "repeated index"
            raise self.error(msg)
        return [x - 1 for x in nonzero]


def _weights(lines: _Lines, count: int, name: str) -> list[int]:
    weights = lines.ints(count)
    if any(w < 0 for w in weights):
        msg = f"negative {name} weight"
        raise lines.error(msg)
    return weights


def read_alist(text: str) -> TannerGraph:
    """Parse an alist document into a graph with realized target degrees.

    Raises
    ------
    AlistFormatError
        the document is malformed, the message names the 1-based line.
    """
    lines = _Lines(text)
    n, m = lines.ints(2)
    if n < 1 or m < 1:
        msg = f"invalid dimensions n={n}, m={m}"
        raise lines.error(msg)
    max_col, max_row = lines.ints(2)
    col_weights = _weights(lines, n, "column")
    row_weights = _weights(lines, m, "row")
    if max(col_weights) != max_col or max(row_weights) != max_row:
        msg = "maximum weights disagree with the weight lists"
        raise lines.error(msg)
    if sum(col_weights) != sum(row_weights):
        msg = "column and row weights count different edge totals"
        raise lines.error(msg)

    edges = []
    for v, weight in enumerate(col_weights):
        edges.extend((c, v) for c in lines.index_list(weight, m, max_col))
    edge_set = set(edges)

    if lines.remaining() == 0:
        logger.warning("alist document has no row lists, using columns only")
    else:
        rows: set[tuple[int, int]] = set()
        for c, weight in enumerate(row_weights):
            rows.update((c, v) for v in lines.index_list(weight, n, max_row))
        if rows != edge_set:
            msg = "row lists disagree with the column lists"
            raise lines.error(msg)
        if lines.trailing():
            msg = "trailing data after the row lists"
            raise lines.error(msg)

    try:
        return TannerGraph.from_edges(m, n, edges)
    except TannerValidationError as e:
        msg = f"inconsistent alist document: {e}"
        raise AlistFormatError(msg) from e


def save_alist(g: TannerGraph, path: str | os.PathLike[str]) -> Path:
    """Write `g` to `path` atomically."""
    target = atomic_write_text(path, write_alist(g))
    logger.info("wrote %dx%d alist to %s", g.m, g.n, target)
    return target


def load_alist(path: str | os.PathLike[str]) -> TannerGraph:
    """Read a graph from an alist file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return read_alist(text)
    except AlistFormatError as e:
        msg = f"{path}: {e}"
        raise AlistFormatError(msg) from e
