"""Strong spectral property checks.

A symmetric ``A`` has the SSP with respect to a graph ``H`` when the only
symmetric ``X`` that vanishes on the diagonal and on ``E(H)`` and commutes
with ``A`` is ``X = 0``.  Such an ``X`` is parameterized by its entries on
the non-edges of ``H``; commuting with ``A`` is a linear condition on those
coordinates, so the property reduces to a kernel computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graphs import Graph, complement
from .linalg import DEFAULT_TOL, Tolerances, as_symmetric, commutator, nullspace

__all__ = ["SspOperator", "SspVerdict", "build_operator", "has_ssp", "verify_witness",
           "witness_from_coordinates"]


@dataclass(frozen=True)
class SspOperator:
    """Linear map from the free coordinates ``X_ij`` (``{i,j}`` a non-edge of
    ``H``, lexicographic order) to the strict upper triangle of ``[A, X]``."""

    n: int
    free_pairs: tuple
    matrix: np.ndarray


@dataclass(frozen=True)
class SspVerdict:
    has_ssp: bool
    kernel_dim: int
    margin: float
    witness: Optional[np.ndarray]
    marginal: bool

    def to_dict(self) -> dict:
        return {
            "has_ssp": self.has_ssp,
            "kernel_dim": self.kernel_dim,
            # JSON has no infinity; the vacuous case is written as null
            "margin": None if np.isinf(self.margin) else float(self.margin),
            "witness": None if self.witness is None else {
                "n": int(self.witness.shape[0]), "rows": self.witness.tolist()},
            "marginal": self.marginal,
        }


def build_operator(a, h: Graph) -> SspOperator:
    A = as_symmetric(a)
    n = A.shape[0]
    if h.n != n:
        raise ValueError(f"graph order {h.n} does not match matrix dimension {n}")
    pairs = tuple(complement(h).sorted_edges())
    iu = np.triu_indices(n, 1)
    cols = np.zeros((len(iu[0]), len(pairs)))
    for k, (i, j) in enumerate(pairs):
        # [A, E_ij + E_ji] without forming the sparse unit matrix
        C = np.zeros((n, n))
        C[:, j] += A[:, i]
        C[:, i] += A[:, j]
        C[i, :] -= A[j, :]
        C[j, :] -= A[i, :]
        cols[:, k] = C[iu]
    return SspOperator(n, pairs, cols)


def witness_from_coordinates(n: int, pairs, coords) -> np.ndarray:
    X = np.zeros((n, n))
    for (i, j), c in zip(pairs, coords):
        X[i, j] = X[j, i] = c
    return X


def has_ssp(a, h: Graph, tol: Tolerances = DEFAULT_TOL) -> SspVerdict:
    """SSP of ``a`` with respect to ``h``.

    ``margin`` is the smallest singular value of the constraint operator
    (``inf`` when ``h`` is complete and the property holds vacuously).  The
    rank cutoff is ``rank_tol * max(sigma_max, |A|_2)``; a verdict is flagged
    ``marginal`` when the margin lies within a factor 10 of it either way.  When the property fails, ``witness`` is
    the unit-Frobenius ``X`` built from the smallest right singular vector.
    """
    op = build_operator(a, h)
    p = len(op.free_pairs)
    if p == 0:
        return SspVerdict(True, 0, float("inf"), None, False)
    # the commutator map has norm at most 2 |A|_2, so a numerically zero
    # operator (A close to a multiple of I) is judged against |A|_2
    a_norm = float(np.linalg.norm(as_symmetric(a), 2))
    rank, basis, sv = nullspace(op.matrix, tol.rank_tol, scale=a_norm)
    kernel_dim = p - rank
    scale = max(float(sv[0]) if sv.size else 0.0, a_norm)
    margin = float(sv[-1])
    cutoff = tol.rank_tol * scale
    marginal = bool(scale > 0 and cutoff / 10 <= margin <= cutoff * 10)
    witness = None
    if kernel_dim > 0:
        vec = basis[:, -1]
        X = witness_from_coordinates(op.n, op.free_pairs, vec)
        norm = np.linalg.norm(X)
        witness = X / norm if norm > 0 else X
    return SspVerdict(kernel_dim == 0, int(kernel_dim), margin, witness, marginal)


def verify_witness(a, h: Graph, x, tol: float = 1e-8) -> bool:
    """Check the three defining conditions of an SSP obstruction ``x``:
    zero diagonal, zero on ``E(h)``, and ``[A, X] = 0`` (relative)."""
    A = as_symmetric(a)
    X = as_symmetric(x)
    if A.shape != X.shape or h.n != A.shape[0]:
        raise ValueError("shape mismatch between matrix, witness and graph")
    if np.max(np.abs(np.diag(X)), initial=0.0) > tol:
        return False
    for i, j in h.edges:
        if abs(X[i, j]) > tol:
            return False
    lhs = np.linalg.norm(commutator(A, X))
    return bool(lhs <= tol * np.linalg.norm(A) * np.linalg.norm(X))
