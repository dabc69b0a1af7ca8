"""Pytanner utilities."""

import os
import tempfile
from enum import IntEnum
from pathlib import Path
from typing import Any

from pytanner.constants import WORKERS_ENV
from pytanner.exceptions import TannerValidationError


class Ordering(IntEnum):
    """Result of the three-way comparisons."""

    less = -1
    equal = 0
    greater = 1


def order(a: Any, b: Any) -> Ordering:
    """Return the three-way comparison of two mutually comparable objects."""
    if a < b:
        return Ordering.less
    if b < a:
        return Ordering.greater
    return Ordering.equal


def validate_index(index: int, bound: int, name: str = "index") -> int:
    """Return an integer if it lies within the range(0, bound).

    Parameters
    ----------
    index : int
    bound : int
        the exclusive upper bound.
    name : str
        what the index addresses, used in the error message.

    Raises
    ------
    TannerValidationError
        the `index` is out of the [0, bound) segment.

    Returns
    -------
    int
    """
    if -1 < index < bound:
        return index

    msg = f"{name} {index} is out of range [0, {bound})"
    raise TannerValidationError(msg) from None


def validate_positive(number: int, name: str) -> int:
    """Return an integer if it is at least one."""
    if number >= 1:
        return number

    msg = f"{name} must be a positive integer, got {number}"
    raise TannerValidationError(msg) from None


def resolve_workers(workers: None | int = None) -> int:
    """Return the worker count for process pools.

    An explicit value wins, then the environment variable, then one
    (meaning in-process execution).
    """
    if workers is None:
        raw = os.environ.get(WORKERS_ENV, "1")
        try:
            workers = int(raw)
        except ValueError as e:
            msg = f"{WORKERS_ENV}={raw!r} is not an integer"
            raise TannerValidationError(msg) from e
    return validate_positive(workers, "workers")


def atomic_write_text(path: str | os.PathLike[str], text: str) -> Path:
    """Write text to a temporary sibling file and rename it over `path`."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(
        dir=target.parent, prefix=f".{target.name}.", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fo:
            fo.write(text)
        Path(tmp).replace(target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return target
