"""BPSK over AWGN with sum-product (SPA) decoding.

The all-zero codeword is transmitted (BPSK maps 0 to +1), which is
sufficient for a linear code over a symmetric channel with a symmetric
decoder. Batch b of SNR point s draws its noise from the stream
SeedSequence((seed, s, b)), so results do not depend on the worker count.
"""

import logging
import math
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import count
from typing import NamedTuple

import numpy as np
import numpy.typing as npt
from numpy.random import PCG64, Generator, SeedSequence
from scipy import sparse
from scipy.special import erfc

from pytanner.constants import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_ITERATIONS,
    DEFAULT_MAX_FRAMES,
    DEFAULT_MIN_FRAME_ERRORS,
    LLR_CLIP,
    LLR_FLOOR,
    SEED_BOUND,
)
from pytanner.exceptions import DecodingError, TannerValidationError
from pytanner.graph import TannerGraph
from pytanner.utils import resolve_workers, validate_positive

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]
BitArray = npt.NDArray[np.uint8]


def code_rate(g: TannerGraph) -> float:
    """Return the design rate (n - m) / n."""
    return (g.n - g.m) / g.n


def noise_sigma(ebn0_db: float, rate: float) -> float:
    """Return sigma with sigma^2 = 1 / (2 R 10^(Eb/N0 / 10))."""
    if not 0 < rate <= 1:
        msg = f"code rate {rate} is out of (0, 1]"
        raise TannerValidationError(msg)
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


def awgn_llr(
    ebn0_db: float, rate: float, noisy_symbols: npt.ArrayLike
) -> FloatArray:
    """Return the channel LLRs 2y / sigma^2 of received BPSK symbols."""
    sigma = noise_sigma(ebn0_db, rate)
    return 2.0 * np.asarray(noisy_symbols, dtype=np.float64) / sigma**2


def uncoded_ber(ebn0_db: float) -> float:
    """Return the uncoded BPSK bit error rate Q(sqrt(2 Eb/N0))."""
    return float(0.5 * erfc(math.sqrt(10.0 ** (ebn0_db / 10.0))))


class DecodeResult(NamedTuple):
    word: BitArray
    iterations: int
    syndrome_ok: bool


def _phi(x: FloatArray) -> FloatArray:
    # phi(x) = -log(tanh(x / 2)), its own inverse on x > 0
    x = np.clip(x, LLR_FLOOR, LLR_CLIP)
    return -np.log(np.tanh(x / 2.0))


class SpaDecoder:
    """Flooding sum-product decoder in the log domain.

    The check node update is the tanh rule written with phi(x) =
    -log(tanh(x / 2)); messages are clipped to +-LLR_CLIP.
    """

    def __init__(
        self,
        g: TannerGraph,
        max_iterations: int = DEFAULT_ITERATIONS,
        *,
        stop_on_syndrome: bool = True,
    ) -> None:
        self.m, self.n = g.m, g.n
        self.max_iterations = validate_positive(max_iterations, "iterations")
        self.stop_on_syndrome = stop_on_syndrome
        edges = g.edges()
        self._edge_cn = np.fromiter((c for c, _ in edges), dtype=np.int64)
        self._edge_vn = np.fromiter((v for _, v in edges), dtype=np.int64)
        ones = np.ones(len(edges), dtype=np.float64)
        slots = np.arange(len(edges))
        # m x E and n x E incidence matrices for per-node sums
        self._cn_sum = sparse.csr_matrix(
            (ones, (self._edge_cn, slots)), shape=(g.m, len(edges))
        )
        self._vn_sum = sparse.csr_matrix(
            (ones, (self._edge_vn, slots)), shape=(g.n, len(edges))
        )

    def __repr__(self) -> str:
        cls_name = type(self).__name__
        return f"{cls_name}(m={self.m}, n={self.n})"

    def syndrome(self, words: npt.ArrayLike) -> BitArray:
        """Return H x^T over GF(2) for one word or a batch of rows."""
        bits = np.atleast_2d(np.asarray(words, dtype=np.float64))
        parity = self._cn_sum @ bits[:, self._edge_vn].T
        return (np.rint(parity).astype(np.int64) % 2).T.astype(np.uint8)

    def _check_update(self, v2c: FloatArray) -> FloatArray:
        magnitudes = _phi(np.abs(v2c))
        negative = (v2c < 0).astype(np.float64)
        totals = (self._cn_sum @ magnitudes.T).T[:, self._edge_cn]
        flips = (self._cn_sum @ negative.T).T[:, self._edge_cn] - negative
        signs = 1.0 - 2.0 * (np.rint(flips) % 2)
        return signs * _phi(totals - magnitudes)

    def decode_batch(
        self, llrs: npt.ArrayLike
    ) -> tuple[BitArray, npt.NDArray[np.int64], npt.NDArray[np.bool_]]:
        """Decode a B x n batch of channel LLRs.

        Returns the hard decisions, the iterations used and the zero
        syndrome flags per frame.
        """
        channel = np.atleast_2d(np.asarray(llrs, dtype=np.float64))
        if channel.shape[1] != self.n:
            msg = f"expected {self.n} LLRs per frame, got {channel.shape[1]}"
            raise DecodingError(msg)
        channel = np.clip(channel, -LLR_CLIP, LLR_CLIP)
        frames = channel.shape[0]
        words = (channel < 0).astype(np.uint8)
        used = np.full(frames, self.max_iterations, dtype=np.int64)
        ok = np.zeros(frames, dtype=np.bool_)

        active = np.arange(frames)
        ch = channel
        v2c = ch[:, self._edge_vn]
        for iteration in range(1, self.max_iterations + 1):
            c2v = np.clip(self._check_update(v2c), -LLR_CLIP, LLR_CLIP)
            total = ch + (self._vn_sum @ c2v.T).T
            v2c = np.clip(total[:, self._edge_vn] - c2v, -LLR_CLIP, LLR_CLIP)
            hard = (total < 0).astype(np.uint8)
            words[active] = hard
            valid = ~self.syndrome(hard).any(axis=1)
            ok[active] = valid
            if not self.stop_on_syndrome:
                continue
            done = valid
            used[active[done]] = iteration
            if done.all():
                break
            keep = ~done
            active, ch, v2c = active[keep], ch[keep], v2c[keep]
        return words, used, ok

    def decode(self, llr: npt.ArrayLike) -> DecodeResult:
        """Decode one frame of channel LLRs."""
        vector = np.asarray(llr, dtype=np.float64)
        if vector.ndim != 1:
            msg = f"expected a 1-D LLR vector, got shape {vector.shape}"
            raise DecodingError(msg)
        words, used, ok = self.decode_batch(vector[np.newaxis, :])
        return DecodeResult(words[0], int(used[0]), bool(ok[0]))


def spa_decode(
    g: TannerGraph,
    llr: npt.ArrayLike,
    max_iterations: int = DEFAULT_ITERATIONS,
    *,
    stop_on_syndrome: bool = True,
) -> DecodeResult:
    """Return (hard decision word, iterations used, syndrome_ok)."""
    decoder = SpaDecoder(
        g, max_iterations, stop_on_syndrome=stop_on_syndrome
    )
    return decoder.decode(llr)


@dataclass(frozen=True)
class SimConfig:
    """Monte-Carlo BER run settings."""

    ebn0_db: Sequence[float]
    max_iterations: int = DEFAULT_ITERATIONS
    min_frame_errors: int = DEFAULT_MIN_FRAME_ERRORS
    max_frames: int = DEFAULT_MAX_FRAMES
    seed: int = 0
    batch_size: int = field(default=DEFAULT_BATCH_SIZE, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "ebn0_db", tuple(float(x) for x in self.ebn0_db)
        )
        if not self.ebn0_db:
            msg = "at least one Eb/N0 point is required"
            raise TannerValidationError(msg)
        validate_positive(self.max_iterations, "max iterations")
        validate_positive(self.min_frame_errors, "min frame errors")
        validate_positive(self.max_frames, "max frames")
        validate_positive(self.batch_size, "batch size")
        if not 0 <= self.seed < SEED_BOUND:
            msg = f"seed {self.seed} is not a 64-bit unsigned integer"
            raise TannerValidationError(msg)


@dataclass(frozen=True)
class BerPoint:
    """Counters and rates of one SNR point."""

    ebn0_db: float
    frames: int
    bit_errors: int
    frame_errors: int
    ber: float
    fer: float
    avg_iterations: float


class _BatchResult(NamedTuple):
    frames: int
    bit_errors: int
    frame_errors: int
    iterations: int


def _run_batch(
    decoder: SpaDecoder,
    sigma: float,
    seed: int,
    point: int,
    batch: int,
    frames: int,
) -> _BatchResult:
    rng = Generator(PCG64(SeedSequence((seed, point, batch))))
    received = 1.0 + sigma * rng.standard_normal((frames, decoder.n))
    words, used, _ = decoder.decode_batch(2.0 * received / sigma**2)
    errors = words.sum(axis=1)
    return _BatchResult(
        frames=frames,
        bit_errors=int(errors.sum()),
        frame_errors=int((errors > 0).sum()),
        iterations=int(used.sum()),
    )


def _batches(
    decoder: SpaDecoder,
    sigma: float,
    cfg: SimConfig,
    point: int,
    workers: int,
) -> Iterator[_BatchResult]:
    sizes = (
        min(cfg.batch_size, cfg.max_frames - b * cfg.batch_size)
        for b in count()
    )
    jobs = ((b, size) for b, size in enumerate(sizes))
    if workers == 1:
        for b, size in jobs:
            if size <= 0:
                return
            yield _run_batch(decoder, sigma, cfg.seed, point, b, size)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        while True:
            chunk = [next(jobs) for _ in range(workers)]
            chunk = [(b, size) for b, size in chunk if size > 0]
            if not chunk:
                return
            futures = [
                pool.submit(_run_batch, decoder, sigma, cfg.seed, point, b, s)
                for b, s in chunk
            ]
            for future in futures:
                yield future.result()


def run_ber(
    g: TannerGraph,
    cfg: SimConfig,
    *,
    workers: None | int = None,
) -> list[BerPoint]:
    """Estimate BER/FER at each Eb/N0 point.

    A point stops once it collected `min_frame_errors` frame errors or
    simulated `max_frames` frames, checked after every batch.
    """
    decoder = SpaDecoder(g, cfg.max_iterations)
    rate = code_rate(g)
    n_workers = resolve_workers(workers)
    points = []
    for point, ebn0 in enumerate(cfg.ebn0_db):
        sigma = noise_sigma(ebn0, rate)
        frames = bit_errors = frame_errors = iterations = 0
        for result in _batches(decoder, sigma, cfg, point, n_workers):
            frames += result.frames
            bit_errors += result.bit_errors
            frame_errors += result.frame_errors
            iterations += result.iterations
            logger.debug(
                "%.2f dB: %d frames, %d frame errors",
                ebn0, frames, frame_errors,
            )  # fmt: skip
            if frame_errors >= cfg.min_frame_errors:
                break
        ber_point = BerPoint(
            ebn0_db=ebn0,
            frames=frames,
            bit_errors=bit_errors,
            frame_errors=frame_errors,
            ber=bit_errors / (frames * g.n),
            fer=frame_errors / frames,
            avg_iterations=iterations / frames,
        )
        logger.info(
            "%.2f dB: BER %.3e FER %.3e over %d frames",
            ebn0, ber_point.ber, ber_point.fer, frames,
        )  # fmt: skip
        points.append(ber_point)
    return points
