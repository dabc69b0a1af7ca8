"""Construction run configuration."""

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

from pytanner.constants import SEED_BOUND
from pytanner.exceptions import TannerValidationError
from pytanner.graph import DegreeSequence
from pytanner.metric import MetricKind
from pytanner.qc import QcParams, validate_qc_params
from pytanner.utils import validate_positive


class Variant(str, Enum):
    """Construction algorithm variants."""

    m_pega = "m-pega"
    mm_pega = "mm-pega"


@dataclass(frozen=True)
class ConstructionConfig:
    """Everything a construction run depends on.

    `circulant_size` 1 means a non-QC code. The M-PEGA variant always
    runs with one edge-trial.
    """

    m: int
    n: int
    degrees: Sequence[int] = field(repr=False)
    kind: MetricKind = MetricKind.distance
    edge_trials: int = 1
    seed: int = 0
    variant: Variant = Variant.mm_pega
    circulant_size: int = 1
    cpm_only: bool = False

    def __post_init__(self) -> None:
        validate_positive(self.m, "m")
        validate_positive(self.n, "n")
        degrees = DegreeSequence(self.degrees, self.m)
        if len(degrees) != self.n:
            msg = f"{len(degrees)} degrees given for n={self.n} VNs"
            raise TannerValidationError(msg)
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "kind", MetricKind(self.kind))
        object.__setattr__(self, "variant", Variant(self.variant))
        validate_positive(self.edge_trials, "edge-trials")
        if not 0 <= self.seed < SEED_BOUND:
            msg = f"seed {self.seed} is not a 64-bit unsigned integer"
            raise TannerValidationError(msg)
        if self.is_qc:
            self.qc_params()

    @property
    def is_qc(self) -> bool:
        return self.circulant_size > 1 or self.cpm_only

    @property
    def effective_trials(self) -> int:
        return 1 if self.variant is Variant.m_pega else self.edge_trials

    def qc_params(self) -> QcParams:
        return validate_qc_params(
            self.m,
            self.n,
            self.circulant_size,
            self.degrees,
            cpm_only=self.cpm_only,
        )
