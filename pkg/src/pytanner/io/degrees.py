"""VN degree sequences from distributions and files."""

import logging
import math
import os
import re
from collections.abc import Mapping
from pathlib import Path

from pytanner.exceptions import TannerValidationError
from pytanner.graph import DegreeSequence
from pytanner.utils import validate_positive

logger = logging.getLogger(__name__)

GAMMA_TOLERANCE = 1e-3

_TERM = re.compile(
    r"^\s*(?P<p>\d*\.?\d+(?:[eE][-+]?\d+)?)\s*\*?\s*"
    r"x(?:\^\{?(?P<d>\d+)\}?)?\s*$"
)


def parse_gamma(text: str) -> dict[int, float]:
    """Parse a VN degree distribution such as '0.5x^2 + 0.5x^3'.

    Repeated degrees are summed. The result is normalized to sum to one.

    Raises
    ------
    TannerValidationError
        a term is malformed, or the fractions are far from summing to one.
    """
    gamma: dict[int, float] = {}
    for chunk in text.split("+"):
        match = _TERM.match(chunk)
        if match is None:
            msg = f"invalid degree distribution term {chunk.strip()!r}"
            raise TannerValidationError(msg)
        degree = int(match["d"] or 1)
        gamma[degree] = gamma.get(degree, 0.0) + float(match["p"])
    return normalize_gamma(gamma)


def normalize_gamma(gamma: Mapping[int, float]) -> dict[int, float]:
    """Return `gamma` scaled to sum to one, sorted by degree."""
    if not gamma:
        msg = "empty degree distribution"
        raise TannerValidationError(msg)
    for degree, p in gamma.items():
        if degree < 1 or p < 0:
            msg = f"invalid term {p}x^{degree}"
            raise TannerValidationError(msg)
    total = math.fsum(gamma.values())
    if abs(total - 1) > GAMMA_TOLERANCE:
        msg = f"degree fractions sum to {total}, not 1"
        raise TannerValidationError(msg)
    return {d: p / total for d, p in sorted(gamma.items()) if p > 0}


def degrees_from_gamma(
    gamma: Mapping[int, float],
    n: int,
    circulant_size: int = 1,
) -> DegreeSequence:
    """Apportion n VNs (or n/N VN groups) to the degrees of `gamma`.

    Largest-remainder apportionment: every degree gets the floor of its
    quota, the leftover units go to the largest fractional parts (ties to
    the smaller degree). Degrees come out in non-decreasing order, so every
    group of N consecutive VNs shares one degree.
    """
    validate_positive(n, "n")
    validate_positive(circulant_size, "circulant size")
    if n % circulant_size:
        msg = f"n={n} is not a multiple of the circulant size {circulant_size}"
        raise TannerValidationError(msg)
    gamma = normalize_gamma(gamma)
    units = n // circulant_size
    quotas = {d: p * units for d, p in gamma.items()}
    counts = {d: math.floor(q) for d, q in quotas.items()}
    leftover = units - sum(counts.values())
    by_remainder = sorted(quotas, key=lambda d: (counts[d] - quotas[d], d))
    for d in by_remainder[:leftover]:
        counts[d] += 1

    degrees = [
        d for d in sorted(counts) for _ in range(counts[d] * circulant_size)
    ]
    realized = {d: c / units for d, c in counts.items() if c}
    logger.info(
        "degree distribution over %d units of %d VN(s): %s",
        units,
        circulant_size,
        " + ".join(f"{p:.5f}x^{d}" for d, p in realized.items()),
    )
    return DegreeSequence(degrees)


def read_degrees(path: str | os.PathLike[str]) -> DegreeSequence:
    """Read whitespace or comma separated VN degrees, '#' starts a comment."""
    degrees = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        for token in line.split("#", 1)[0].replace(",", " ").split():
            try:
                degrees.append(int(token))
            except ValueError:
                msg = f"{path}:{lineno}: invalid degree {token!r}"
                raise TannerValidationError(msg) from None
    if not degrees:
        msg = f"{path}: no degrees found"
        raise TannerValidationError(msg)
    return DegreeSequence(degrees)
