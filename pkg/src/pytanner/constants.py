"""Pytanner constants."""

import math
from typing import Final

INF: Final[float] = math.inf
NEG_INF: Final[float] = -math.inf

DEFAULT_ACE_DEPTH: Final[int] = 5

# brute_force_cycles refuses bigger graphs unless told otherwise
ORACLE_NODE_LIMIT: Final[int] = 24

# candidate selection threshold, exclusive (more than 10 codes out of 1000)
CANDIDATE_MIN_FREQUENCY: Final[float] = 0.01

VNLGD_TOLERANCE: Final[float] = 1e-9

DEFAULT_ITERATIONS: Final[int] = 100
DEFAULT_MIN_FRAME_ERRORS: Final[int] = 100
DEFAULT_MAX_FRAMES: Final[int] = 100_000
DEFAULT_BATCH_SIZE: Final[int] = 64

LLR_CLIP: Final[float] = 30.0
LLR_FLOOR: Final[float] = 1e-12

WORKERS_ENV: Final[str] = "PYTANNER_WORKERS"

SEED_BOUND: Final[int] = 2**64
