"""CSV reports of the analyze, ensemble and simulate commands.

Columns
-------
analyze:  file, m, n, edges, girth, vnlgd, eta_2 .. eta_{2 d_max}
ensemble: row, seed, girth, frequency, vnlgd, eta_2 .. eta_{2 d_max}
          (row is code, maximum, min_vnlgd, average_inf_fraction or
          average_mean)
simulate: ebn0_db, frames, bit_errors, frame_errors, ber, fer, avg_iters

Infinite values are written as 'inf' and '-inf'.
"""

import csv
import io
import logging
import math
import os
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from pytanner.analysis import AceSpectrum, Girth, Vnlgd
from pytanner.ensemble import EnsembleReport
from pytanner.graph import TannerGraph
from pytanner.sim import BerPoint
from pytanner.utils import atomic_write_text

logger = logging.getLogger(__name__)

SIMULATE_COLUMNS = (
    "ebn0_db",
    "frames",
    "bit_errors",
    "frame_errors",
    "ber",
    "fer",
    "avg_iters",
)


def eta_columns(ace_depth: int) -> list[str]:
    return [f"eta_{2 * (i + 1)}" for i in range(ace_depth)]


def _cell(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def _spectrum_cells(spectrum: Sequence[Girth]) -> dict[str, Any]:
    return {
        col: _cell(eta)
        for col, eta in zip(eta_columns(len(spectrum)), spectrum)
    }


def render_csv(
    columns: Sequence[str], rows: Iterable[Mapping[str, Any]]
) -> str:
    """Return the CSV text of `rows`, missing cells are empty."""
    buffer = io.StringIO()
    writer = csv.DictWriter(
        buffer, fieldnames=list(columns), lineterminator="\n"
    )
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(row.get(k, "")) for k in columns})
    return buffer.getvalue()


def write_csv(
    path: str | os.PathLike[str],
    columns: Sequence[str],
    rows: Iterable[Mapping[str, Any]],
) -> Path:
    """Write a CSV report atomically."""
    target = atomic_write_text(path, render_csv(columns, rows))
    logger.info("wrote report %s", target)
    return target


@dataclass(frozen=True)
class CodeAnalysis:
    """The analyze command's result for one file."""

    file: str
    m: int
    n: int
    edges: int
    girth: Girth
    vnlgd: Vnlgd
    spectrum: AceSpectrum

    def row(self) -> dict[str, Any]:
        return {
            "file": self.file,
            "m": self.m,
            "n": self.n,
            "edges": self.edges,
            "girth": self.girth,
            "vnlgd": str(self.vnlgd),
            **_spectrum_cells(self.spectrum),
        }


def analyze_columns(ace_depth: int) -> list[str]:
    return ["file", "m", "n", "edges", "girth", "vnlgd"] + eta_columns(
        ace_depth
    )


def analysis_of(
    file: str,
    g: TannerGraph,
    girth: Girth,
    vnlgd: Vnlgd,
    spectrum: AceSpectrum,
) -> CodeAnalysis:
    return CodeAnalysis(
        file=file,
        m=g.m,
        n=g.n,
        edges=g.num_edges,
        girth=girth,
        vnlgd=vnlgd,
        spectrum=spectrum,
    )


def ensemble_columns(ace_depth: int) -> list[str]:
    return ["row", "seed", "girth", "frequency", "vnlgd"] + eta_columns(
        ace_depth
    )


def ensemble_rows(report: EnsembleReport) -> list[dict[str, Any]]:
    """Per-code rows followed by the ensemble summary rows."""
    rows: list[dict[str, Any]] = [
        {
            "row": "code",
            "seed": code.seed,
            "girth": code.girth,
            "vnlgd": str(code.vnlgd),
            **_spectrum_cells(code.spectrum),
        }
        for code in report.codes
    ]
    rows.append(
        {
            "row": "maximum",
            "frequency": report.maximum_frequency,
            **_spectrum_cells(report.maximum),
        }
    )
    rows.append(
        {
            "row": "min_vnlgd",
            "frequency": report.minimum_vnlgd_frequency,
            "vnlgd": str(report.minimum_vnlgd),
        }
    )
    average = report.average
    rows.append(
        {
            "row": "average_inf_fraction",
            **_spectrum_cells([fraction for fraction, _ in average]),
        }
    )
    rows.append(
        {
            "row": "average_mean",
            **_spectrum_cells([mean for _, mean in average]),
        }
    )
    return rows


def simulate_rows(points: Iterable[BerPoint]) -> list[dict[str, Any]]:
    return [
        {
            "ebn0_db": p.ebn0_db,
            "frames": p.frames,
            "bit_errors": p.bit_errors,
            "frame_errors": p.frame_errors,
            "ber": p.ber,
            "fer": p.fer,
            "avg_iters": p.avg_iterations,
        }
        for p in points
    ]
