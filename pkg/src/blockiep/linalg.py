"""Dense symmetric matrix utilities: eigendecomposition, tolerance-aware
spectra, pattern membership and a few structural operations.

Symmetric matrices are plain ``float64`` ndarrays.  :func:`as_symmetric`
validates and symmetrizes anything coming from outside.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "Spectrum",
    "as_symmetric",
    "jacobi_eigh",
    "eigh",
    "eigvalsh",
    "spectrum",
    "group_values",
    "pattern_of",
    "in_pattern_strict",
    "in_pattern_closed",
    "nullspace",
    "commutator",
    "hadamard",
    "direct_sum",
    "principal_submatrix",
    "multiset_distance",
    "adjacency_matrix",
    "matrix_to_dict",
    "matrix_from_dict",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by every check in the package.

    eig_tol
        eigenvalue / reconstruction residual bound (relative).
    zero_tol
        off-diagonal magnitudes at or below this count as zero.
    group_tol
        width used to merge nearby eigenvalues into one multiple eigenvalue.
    rank_tol
        singular values at or below ``rank_tol * sigma_max`` count as zero.
    """

    eig_tol: float = 1e-10
    zero_tol: float = 1e-8
    group_tol: float = 1e-6
    rank_tol: float = 1e-9

    def __post_init__(self):
        for name in ("eig_tol", "zero_tol", "group_tol", "rank_tol"):
            val = getattr(self, name)
            if not (np.isfinite(val) and val > 0):
                raise ValueError(f"tolerance {name} must be positive, got {val!r}")

    def with_(self, **kwargs) -> "Tolerances":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


DEFAULT_TOL = Tolerances()


def as_symmetric(a, rtol: float = 1e-12) -> np.ndarray:
    """Return ``a`` as a finite symmetric float array.

    Raises ``ValueError`` when ``a`` is not square, has non-finite entries or
    is asymmetric beyond ``rtol`` relative to its largest entry.
    """
    arr = np.array(a, dtype=float, copy=True)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(arr)))) if arr.size else 1.0
    if arr.size and np.max(np.abs(arr - arr.T)) > rtol * scale:
        raise ValueError("matrix is not symmetric")
    return (arr + arr.T) / 2


def jacobi_eigh(a, tol: float = 1e-15, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps over all off-diagonal pairs, annihilating each with a plane
    rotation, until the off-diagonal Frobenius norm drops below
    ``tol * ||A||_F``.  Eigenvalues are returned ascending with the matching
    orthonormal eigenvector columns.
    """
    A = as_symmetric(a)
    n = A.shape[0]
    V = np.eye(n)
    if n < 2:
        return np.diag(A).copy(), V
    total = np.linalg.norm(A)
    if total == 0:
        return np.zeros(n), V
    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(A[iu] ** 2))
        if off <= tol * total:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                # entries this small cannot affect the stopping test
                if abs(apq) <= 1e-20 * total:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                A[:, p] = c * colp - s * colq
                A[:, q] = s * colp + c * colq
                rowp = A[p, :].copy()
                rowq = A[q, :].copy()
                A[p, :] = c * rowp - s * rowq
                A[q, :] = s * rowp + c * rowq
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        raise np.linalg.LinAlgError("Jacobi iteration did not converge")
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def eigh(a, method: str = "lapack") -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvectors of a symmetric
    matrix.

    ``method="lapack"`` (default) defers to ``numpy.linalg.eigh``;
    ``method="jacobi"`` runs :func:`jacobi_eigh`.
    """
    A = as_symmetric(a)
    if method == "jacobi":
        return jacobi_eigh(A)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    w, V = np.linalg.eigh(A)
    return w, V


def eigvalsh(a) -> np.ndarray:
    return np.linalg.eigvalsh(as_symmetric(a))


def group_values(values: Iterable[float], group_tol: float) -> list[tuple[float, int]]:
    """Single-linkage grouping of sorted values: a value joins the current
    group when it lies within ``group_tol`` of the previous value.  Each group
    is represented by its mean."""
    vals = np.sort(np.asarray(list(values), dtype=float))
    groups: list[list[float]] = []
    for x in vals:
        if groups and x - groups[-1][-1] <= group_tol:
            groups[-1].append(float(x))
        else:
            groups.append([float(x)])
    return [(float(np.mean(g)), len(g)) for g in groups]


@dataclass(frozen=True)
class Spectrum:
    values: tuple
    groups: tuple
    group_tol: float

    @classmethod
    def from_values(cls, values: Iterable[float], group_tol: float = DEFAULT_TOL.group_tol) -> "Spectrum":
        vals = tuple(float(x) for x in np.sort(np.asarray(list(values), dtype=float)))
        return cls(vals, tuple(group_values(vals, group_tol)), group_tol)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def distinct(self) -> list[float]:
        return [v for v, _ in self.groups]

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.groups]

    def multiplicity_of(self, x: float) -> int:
        for v, m in self.groups:
            if abs(v - x) <= self.group_tol:
                return m
        return 0

    def contains(self, x: float, tol: float | None = None) -> bool:
        tol = self.group_tol if tol is None else tol
        return any(abs(v - x) <= tol for v in self.values)

    def __repr__(self) -> str:
        parts = [f"{v:.6g}" + (f"^({m})" if m > 1 else "") for v, m in self.groups]
        return "Spectrum{" + ", ".join(parts) + "}"


def spectrum(a, tol: Tolerances = DEFAULT_TOL) -> Spectrum:
    return Spectrum.from_values(eigvalsh(a), tol.group_tol)


def _check_dim(a: np.ndarray, g: Graph) -> None:
    if a.shape[0] != g.n:
        raise ValueError(f"matrix dimension {a.shape[0]} does not match graph order {g.n}")


def pattern_of(a, zero_tol: float = DEFAULT_TOL.zero_tol) -> Graph:
    A = as_symmetric(a)
    n = A.shape[0]
    i, j = np.nonzero(np.triu(np.abs(A) > zero_tol, 1))
    return Graph(n, zip(i.tolist(), j.tolist()))


def _edge_mask(g: Graph) -> np.ndarray:
    mask = np.zeros((g.n, g.n), dtype=bool)
    for i, j in g.edges:
        mask[i, j] = mask[j, i] = True
    return mask


def in_pattern_closed(a, g: Graph, zero_tol: float = DEFAULT_TOL.zero_tol) -> bool:
    """Off-diagonal entries vanish (up to ``zero_tol``) outside ``E(g)``."""
    A = as_symmetric(a)
    _check_dim(A, g)
    off = ~_edge_mask(g)
    np.fill_diagonal(off, False)
    return bool(np.all(np.abs(A[off]) <= zero_tol))


def in_pattern_strict(a, g: Graph, zero_tol: float = DEFAULT_TOL.zero_tol) -> bool:
    """Off-diagonal entries are nonzero exactly on ``E(g)``."""
    A = as_symmetric(a)
    _check_dim(A, g)
    mask = _edge_mask(g)
    return in_pattern_closed(A, g, zero_tol) and bool(np.all(np.abs(A[mask]) > zero_tol))


def nullspace(m, rank_tol: float = DEFAULT_TOL.rank_tol,
              scale: float | None = None) -> tuple[int, np.ndarray, np.ndarray]:
    """Numerical rank, orthonormal kernel basis (columns) and the singular
    values of a rectangular matrix.

    Singular values at or below ``rank_tol * max(sigma_max, scale)`` are
    treated as zero.  Columns beyond the row count are always in the kernel.
    """
    M = np.atleast_2d(np.asarray(m, dtype=float))
    rows, cols = M.shape
    if cols == 0:
        return 0, np.zeros((0, 0)), np.zeros(0)
    if rows == 0:
        return 0, np.eye(cols), np.zeros(cols)
    _, s, vt = np.linalg.svd(M, full_matrices=True)
    smax = s[0] if s.size else 0.0
    if scale is not None:
        smax = max(smax, float(scale))
    rank = int(np.sum(s > rank_tol * smax))
    basis = vt[rank:].T
    full = np.zeros(cols)
    full[: s.size] = s
    return rank, basis, full


def commutator(a, b) -> np.ndarray:
    A = np.asarray(a, dtype=float)
    B = np.asarray(b, dtype=float)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    return A @ B - B @ A


def hadamard(a, b) -> np.ndarray:
    A = as_symmetric(a)
    B = as_symmetric(b)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    return A * B


def direct_sum(*mats) -> np.ndarray:
    blocks = [as_symmetric(m) for m in mats]
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n))
    k = 0
    for b in blocks:
        d = b.shape[0]
        out[k:k + d, k:k + d] = b
        k += d
    return out


def principal_submatrix(a, v: int | Sequence[int]) -> np.ndarray:
    """``A(v)``: delete row and column ``v`` (or every index in ``v``)."""
    A = as_symmetric(a)
    drop = {v} if isinstance(v, (int, np.integer)) else set(v)
    n = A.shape[0]
    for x in drop:
        if not (0 <= x < n):
            raise ValueError(f"index {x} out of range for a {n}x{n} matrix")
    keep = [i for i in range(n) if i not in drop]
    return A[np.ix_(keep, keep)]


def multiset_distance(s, t) -> float:
    """Max deviation between two equally sized multisets after sorting."""
    a = np.sort(np.asarray(s.values if isinstance(s, Spectrum) else list(s), dtype=float))
    b = np.sort(np.asarray(t.values if isinstance(t, Spectrum) else list(t), dtype=float))
    if a.shape != b.shape:
        raise ValueError(f"cardinality mismatch: {a.size} vs {b.size}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def adjacency_matrix(g: Graph) -> np.ndarray:
    return _edge_mask(g).astype(float)


def matrix_to_dict(a) -> dict:
    A = as_symmetric(a)
    return {"n": int(A.shape[0]), "rows": A.tolist()}


def matrix_from_dict(data: dict) -> np.ndarray:
    try:
        n = data["n"]
        rows = data["rows"]
    except (TypeError, KeyError) as exc:
        raise ValueError("matrix JSON needs fields 'n' and 'rows'") from exc
    arr = np.asarray(rows, dtype=float)
    if arr.shape != (n, n):
        raise ValueError(f"matrix JSON 'rows' must be {n}x{n}, got shape {arr.shape}")
    return as_symmetric(arr, rtol=1e-12)


def matrix_from_json(text: str) -> np.ndarray:
    return matrix_from_dict(json.loads(text))
