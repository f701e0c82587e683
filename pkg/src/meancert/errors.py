"""Exception types shared across the package."""


class MeanCertError(Exception):
    """Base class for all meancert errors."""


class DimensionMismatch(MeanCertError):
    """Operands have incompatible shapes."""


class ConvergenceFailure(MeanCertError):
    """Eigendecomposition did not meet its accuracy contract."""


class IllConditioned(MeanCertError):
    """Condition number exceeds the configured cap for a stable inverse."""


class Singular(MeanCertError):
    """Matrix is numerically singular (pivot below threshold)."""


class DegenerateInput(MeanCertError):
    """Input degenerates the quantity being computed (e.g. a 0/0 ratio)."""


class RequiresOrdered(MeanCertError):
    """Inputs must be strictly ordered (a < b) and are not."""


class WeightOrder(MeanCertError):
    """Weights violate the required ordering (v must not exceed tau)."""


class HypothesisViolated(MeanCertError):
    """A stated hypothesis failed; carries the name of the failing check."""

    def __init__(self, check_name: str, margin: float):
        self.check_name = check_name
        self.margin = margin
        super().__init__(f"hypothesis check {check_name!r} failed (margin {margin:.3e})")


class ConstructionFailure(MeanCertError):
    """A randomized constructor exhausted its retries."""


class ConfigError(MeanCertError):
    """Invalid run configuration."""
