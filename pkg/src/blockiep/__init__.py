"""Constructive inverse eigenvalue tools for graph patterns: SSP checks,
direct constructions, isospectral continuation and block-graph solvers."""

from .errors import (BlockIEPError, ConstructionError, ContinuationError, InfeasibleError,
                     NotCertifiedError, SearchBudgetExhausted)
from .graphs import BlowupSpec, Graph, GraphError
from .linalg import DEFAULT_TOL, Spectrum, Tolerances
from .ssp import SspVerdict, has_ssp

__all__ = [
    "BlockIEPError", "ConstructionError", "ContinuationError", "InfeasibleError",
    "NotCertifiedError", "SearchBudgetExhausted", "BlowupSpec", "Graph", "GraphError",
    "DEFAULT_TOL", "Spectrum", "Tolerances", "SspVerdict", "has_ssp",
]

__version__ = "0.1.0"
