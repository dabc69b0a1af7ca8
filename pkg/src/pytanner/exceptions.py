"""Tanner graph (LDPC) exception classes."""


class TannerError(Exception):
    """Pytanner Base Error."""


class TannerValidationError(TannerError):
    """Data Validation Error."""


class DuplicateEdgeError(TannerValidationError):
    """Parallel Edge Error."""


class DegreeOverflowError(TannerValidationError):
    """Variable Node Degree Overflow Error."""


class MetricKindError(TannerError):
    """Incompatible Metric Values Error."""


class ConstructionError(TannerError):
    """Code Construction Failure."""


class EnsembleError(TannerError):
    """Ensemble Generation/Aggregation Error.

    Carries the seed of the failing construction when there is one.
    """

    def __init__(self, msg: str, seed: None | int = None) -> None:
        super().__init__(msg)
        self.seed = seed

    def __reduce__(self) -> tuple[type, tuple[str, None | int]]:
        return type(self), (str(self), self.seed)


class AlistFormatError(TannerValidationError):
    """Malformed alist Document Error."""


class DecodingError(TannerError):
    """Decoder Input Error."""
