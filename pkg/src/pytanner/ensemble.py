"""Ensembles of constructed codes and their statistics.

Code i of an ensemble is built with seed base_seed + i. Results are
collected in seed order whatever the worker count.
"""

import logging
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial

import numpy as np

from pytanner.analysis import (
    AceSpectrum,
    Girth,
    Vnlgd,
    ace_spectrum,
    distance_girth,
    vnlgd,
)
from pytanner.constants import CANDIDATE_MIN_FREQUENCY, DEFAULT_ACE_DEPTH, INF
from pytanner.construct import ConstructionConfig, run_construction
from pytanner.exceptions import EnsembleError, TannerError
from pytanner.utils import resolve_workers, validate_positive

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CodeSummary:
    """Cycle statistics of one constructed code."""

    seed: int
    girth: Girth
    spectrum: AceSpectrum
    vnlgd: Vnlgd


def summarize_code(
    cfg: ConstructionConfig, ace_depth: int, seed: int
) -> CodeSummary:
    """Construct the code of `seed` and analyze it.

    Raises
    ------
    EnsembleError
        the construction failed, the seed is attached.
    """
    try:
        g, _ = run_construction(replace(cfg, seed=seed))
    except TannerError as e:
        msg = f"construction with seed {seed} failed: {e}"
        raise EnsembleError(msg, seed=seed) from e
    summary = CodeSummary(
        seed=seed,
        girth=distance_girth(g),
        spectrum=ace_spectrum(g, ace_depth),
        vnlgd=vnlgd(g),
    )
    logger.info(
        "seed %d: girth %s, spectrum %s", seed, summary.girth, summary.spectrum
    )
    return summary


SlotAverage = tuple[float, float]


def aggregate_average_spectrum(
    spectra: Iterable[AceSpectrum],
) -> list[SlotAverage]:
    """Return (fraction of inf entries, mean over finite entries) per slot.

    A slot with no finite entry reports (1.0, inf).
    """
    rows = [tuple(s) for s in spectra]
    if not rows:
        msg = "cannot average an empty set of spectra"
        raise EnsembleError(msg)
    if len({len(row) for row in rows}) > 1:
        msg = "spectra of different depths cannot be averaged"
        raise EnsembleError(msg)
    table = np.array(rows, dtype=np.float64)
    finite = np.isfinite(table)
    averages = []
    for slot in range(table.shape[1]):
        column = table[finite[:, slot], slot]
        inf_fraction = 1.0 - column.size / table.shape[0]
        mean = float(np.mean(column)) if column.size else INF
        averages.append((inf_fraction, mean))
    return averages


@dataclass(frozen=True)
class EnsembleReport:
    """Per-code results and the ensemble statistics derived from them."""

    codes: tuple[CodeSummary, ...]
    ace_depth: int = DEFAULT_ACE_DEPTH

    def _require_codes(self) -> None:
        if not self.codes:
            msg = "the ensemble report is empty"
            raise EnsembleError(msg)

    @property
    def count(self) -> int:
        return len(self.codes)

    @property
    def seeds(self) -> list[int]:
        return [code.seed for code in self.codes]

    @property
    def spectra(self) -> list[AceSpectrum]:
        return [code.spectrum for code in self.codes]

    @property
    def average(self) -> list[SlotAverage]:
        return aggregate_average_spectrum(self.spectra)

    def spectrum_frequencies(self) -> Counter[AceSpectrum]:
        return Counter(self.spectra)

    def vnlgd_frequencies(self) -> Counter[Vnlgd]:
        return Counter(code.vnlgd for code in self.codes)

    @property
    def maximum(self) -> AceSpectrum:
        self._require_codes()
        return max(self.spectra)

    @property
    def maximum_count(self) -> int:
        return self.spectrum_frequencies()[self.maximum]

    @property
    def maximum_frequency(self) -> float:
        return self.maximum_count / self.count

    @property
    def minimum_vnlgd(self) -> Vnlgd:
        self._require_codes()
        return min(code.vnlgd for code in self.codes)

    @property
    def minimum_vnlgd_frequency(self) -> float:
        return self.vnlgd_frequencies()[self.minimum_vnlgd] / self.count

    def fraction_free_of(self, length: int) -> float:
        """Return the fraction of codes without cycles of `length`."""
        self._require_codes()
        if length % 2 or not 2 <= length <= 2 * self.ace_depth:
            msg = f"cycle length {length} is not covered by the spectra"
            raise EnsembleError(msg)
        slot = length // 2 - 1
        free = sum(math.isinf(s[slot]) for s in self.spectra)
        return free / self.count


def generate_ensemble(
    cfg: ConstructionConfig,
    count: int,
    base_seed: int,
    *,
    ace_depth: int = DEFAULT_ACE_DEPTH,
    workers: None | int = None,
) -> EnsembleReport:
    """Construct and analyze `count` codes.

    Parameters
    ----------
    cfg : ConstructionConfig
        the configuration, its seed is replaced per code.
    count : int
    base_seed : int
    ace_depth : int
        the ACE spectrum depth d_max.
    workers : int, optional
        process count, the PYTANNER_WORKERS variable or 1 by default.

    Raises
    ------
    EnsembleError
        a construction failed, the failing seed is attached.
    """
    validate_positive(count, "count")
    validate_positive(ace_depth, "ace depth")
    seeds = range(base_seed, base_seed + count)
    job = partial(summarize_code, cfg, ace_depth)
    n_workers = min(resolve_workers(workers), count)
    logger.info("generating %d codes with %d worker(s)", count, n_workers)
    if n_workers == 1:
        codes = [job(seed) for seed in seeds]
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            codes = list(pool.map(job, seeds))
    return EnsembleReport(codes=tuple(codes), ace_depth=ace_depth)


def select_candidates(
    report: EnsembleReport,
    min_frequency: float = CANDIDATE_MIN_FREQUENCY,
) -> list[int]:
    """Return the indices of the codes at the best frequent spectrum.

    The spectra are walked from the largest down, the first one occurring
    more often than `min_frequency` wins. An empty list means no spectrum is
    frequent enough.
    """
    if not report.codes:
        msg = "cannot select candidates from an empty report"
        raise EnsembleError(msg)
    frequencies = report.spectrum_frequencies()
    ranked: Sequence[AceSpectrum] = sorted(frequencies, reverse=True)
    for rank, spectrum in enumerate(ranked):
        frequency = frequencies[spectrum] / report.count
        if frequency > min_frequency:
            if rank:
                logger.warning(
                    "maximum spectrum %s occurs with frequency %.4f <= %.4f, "
                    "falling back to %s",
                    ranked[0],
                    frequencies[ranked[0]] / report.count,
                    min_frequency,
                    spectrum,
                )
            return [
                i for i, code in enumerate(report.codes)
                if code.spectrum == spectrum
            ]  # fmt: skip
    logger.warning("no spectrum reaches the frequency %.4f", min_frequency)
    return []
