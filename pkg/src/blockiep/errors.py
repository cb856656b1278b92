class BlockIEPError(Exception):
    """Base class for failures reported by the package."""


class ConstructionError(BlockIEPError):
    """A direct construction could not meet its post-conditions (usually a
    resampling budget ran out)."""


class ContinuationError(BlockIEPError):
    """Every attempted step size failed.  Inconclusive, not a proof of
    non-existence."""


class InfeasibleError(BlockIEPError):
    """The target spectrum is impossible by a known lower bound on the number of distinct eigenvalues."""


class NotCertifiedError(BlockIEPError):
    """The sufficient conditions implemented here do not cover the target.
    Says nothing about feasibility."""


class SearchBudgetExhausted(BlockIEPError):
    """The refinement search hit its cap before deciding."""
