"""Isospectral continuation onto larger patterns.

A matrix with the SSP with respect to ``H`` sits on a transversal
intersection of its isospectral manifold ``E_L`` and the pattern class of
``H``.  Pinning the entries on new edges to a small value ``s`` and
alternating projections between ``E_L`` and the affine pattern set ``M(s)``
finds a nearby matrix with the same spectrum on the larger pattern.

Appending a clique is the special case that starts from ``A + lam I_s`` and
pins the edges joining the attachment vertex to the new clique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .errors import ContinuationError
from .graphs import Graph, complete, disjoint_union, is_subgraph
from .linalg import (DEFAULT_TOL, Tolerances, as_symmetric, direct_sum, eigvalsh, multiset_distance,
                     principal_submatrix)
from .ssp import has_ssp

__all__ = [
    "ContinuationProblem",
    "ContinuationResult",
    "project_isospectral",
    "project_pattern",
    "solve",
    "default_epsilon",
    "ssp_supergraph_perturb",
    "append_clique",
    "append_cliques_chain",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 5000

Trace = Optional[Callable[[dict], None]]


def _spectral_scale(values) -> float:
    v = np.asarray(values, dtype=float)
    return 1.0 + (float(np.max(np.abs(v))) if v.size else 0.0)


def default_epsilon(a) -> float:
    return 1e-2 * (1.0 + float(np.linalg.norm(a)))


def project_isospectral(a, spectrum: Sequence[float]) -> np.ndarray:
    """Nearest point of ``{B : spec(B) = spectrum}`` in Frobenius norm, pairing
    sorted eigenvalues of ``a`` with the sorted targets."""
    A = as_symmetric(a)
    lam = np.sort(np.asarray(spectrum, dtype=float))
    if lam.size != A.shape[0]:
        raise ValueError(f"target spectrum has {lam.size} values for a {A.shape[0]}x{A.shape[0]} matrix")
    _, V = np.linalg.eigh(A)
    B = (V * lam) @ V.T
    return (B + B.T) / 2


def _pattern_mask(h: Graph) -> np.ndarray:
    mask = np.eye(h.n, dtype=bool)
    for i, j in h.edges:
        mask[i, j] = mask[j, i] = True
    return mask


def _check_pinned(h: Graph, pinned: Mapping) -> dict:
    out = {}
    for (i, j), val in pinned.items():
        i, j = (int(i), int(j)) if i <= j else (int(j), int(i))
        if i != j and not h.has_edge(i, j):
            raise ValueError(f"pinned position ({i}, {j}) is outside the allowed pattern")
        out[(i, j)] = float(val)
    return out


def project_pattern(a, h: Graph, pinned: Mapping | None = None) -> np.ndarray:
    """Zero every entry outside ``S^cl(h)`` and overwrite pinned entries."""
    A = np.asarray(a, dtype=float)
    if A.shape != (h.n, h.n):
        raise ValueError(f"matrix shape {A.shape} does not match graph order {h.n}")
    pins = _check_pinned(h, pinned or {})
    out = np.where(_pattern_mask(h), A, 0.0)
    for (i, j), val in pins.items():
        out[i, j] = out[j, i] = val
    return out


@dataclass
class ContinuationProblem:
    start: np.ndarray
    target_spectrum: Sequence[float]
    pattern: Graph
    pinned: Mapping = field(default_factory=dict)
    budget: int = DEFAULT_BUDGET
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        self.start = as_symmetric(self.start)
        if len(self.target_spectrum) != self.start.shape[0]:
            raise ValueError("target spectrum size does not match the start matrix")
        if self.pattern.n != self.start.shape[0]:
            raise ValueError("pattern order does not match the start matrix")
        self.pinned = _check_pinned(self.pattern, self.pinned)


@dataclass
class ContinuationResult:
    matrix: np.ndarray
    iterations: int
    spectral_residual: float
    pattern_residual: float
    converged: bool
    history: list = field(default_factory=list)


def solve(p: ContinuationProblem, trace: Trace = None) -> ContinuationResult:
    """Alternate ``project_isospectral`` and ``project_pattern`` until the
    pattern-feasible iterate has the target spectrum to within
    ``10 * eig_tol * (1 + max|L|)``.

    Budget exhaustion is reported through ``converged=False``.
    """
    lam = np.sort(np.asarray(p.target_spectrum, dtype=float))
    threshold = 10 * p.tol.eig_tol * _spectral_scale(lam)
    A = project_pattern(p.start, p.pattern, p.pinned)
    history = []
    it = 0
    while True:
        res = float(np.max(np.abs(eigvalsh(A) - lam))) if lam.size else 0.0
        history.append(res)
        if trace is not None:
            trace({"iteration": it, "spectral_residual": res})
        if res <= threshold or it >= p.budget or not np.isfinite(res):
            break
        A = project_pattern(project_isospectral(A, lam), p.pattern, p.pinned)
        it += 1
    # the pattern projection runs last, so the pattern residual is exactly zero
    return ContinuationResult(A, it, res, 0.0, bool(res <= threshold), history)


def _new_edges(h: Graph, hp: Graph) -> list[tuple[int, int]]:
    if hp.n != h.n:
        raise ValueError("both patterns must live on the same vertex set")
    if not is_subgraph(h, hp):
        raise ValueError("target pattern must contain every edge of the source pattern")
    return sorted(hp.edges - h.edges)


def _perturb_once(A: np.ndarray, hp: Graph, new: list, s0: float, eps: float,
                  tol: Tolerances, budget: int, trace: Trace):
    """One continuation attempt; returns (matrix or None, failure reason)."""
    lam = eigvalsh(A)
    pinned = {e: s0 for e in new}
    res = solve(ContinuationProblem(A, lam, hp, pinned, budget, tol), trace)
    if not res.converged:
        return None, f"not converged after {res.iterations} iterations (residual {res.spectral_residual:.2e})"
    out = res.matrix
    dist = float(np.linalg.norm(out - A))
    if not dist < eps:
        return None, f"moved {dist:.2e}, not within epsilon {eps:.2e}"
    if multiset_distance(eigvalsh(out), lam) > 10 * tol.eig_tol * _spectral_scale(lam):
        return None, "spectrum drifted"
    if any(out[i, j] != s0 for i, j in new):
        return None, "pinned entries moved"
    old = np.abs(A) > tol.zero_tol
    np.fill_diagonal(old, False)
    if np.any(np.abs(out[old]) <= tol.zero_tol):
        return None, "an entry that was nonzero collapsed"
    if not has_ssp(out, hp, tol).has_ssp:
        return None, "result lacks the SSP on the target pattern"
    return out, None


def ssp_supergraph_perturb(a, h: Graph, hp: Graph, epsilon: float | None = None,
                           s0: float | None = None, tol: Tolerances = DEFAULT_TOL,
                           max_attempts: int = 10, budget: int = DEFAULT_BUDGET,
                           trace: Trace = None) -> np.ndarray:
    """Cospectral matrix within ``epsilon`` of ``a`` whose pattern gains every
    edge of ``hp`` not in ``h``, with the SSP with respect to ``hp``.

    New edges are pinned to ``s0``, default
    ``min(epsilon / (4 |new| + 1), 1e-2 (1 + max|lam|))``, halved after each
    failed attempt.  Raises ``ContinuationError`` when every attempt fails;
    that outcome is inconclusive, not evidence of non-existence.
    """
    A = as_symmetric(a)
    if h.n != A.shape[0]:
        raise ValueError("graph order does not match matrix dimension")
    new = _new_edges(h, hp)
    if not new:
        return A.copy()
    if not has_ssp(A, h, tol).has_ssp:
        raise ValueError("starting matrix does not have the SSP with respect to the source pattern")
    eps = default_epsilon(A) if epsilon is None else float(epsilon)
    if not eps > 0:
        raise ValueError("epsilon must be positive")
    scale = _spectral_scale(eigvalsh(A))
    step = min(eps / (4 * len(new) + 1), 1e-2 * scale) if s0 is None else float(s0)
    reasons = []
    for _ in range(max(1, max_attempts)):
        out, why = _perturb_once(A, hp, new, step, eps, tol, budget, trace)
        if out is not None:
            return out
        reasons.append(f"s0={step:.3e}: {why}")
        step /= 2
    raise ContinuationError("every step size failed; " + "; ".join(reasons))


def _avoids(x: float, values, tol: float) -> bool:
    v = np.asarray(values, dtype=float)
    return v.size == 0 or float(np.min(np.abs(v - x))) > tol


def _clique_pattern(g: Graph, v: int, s: int) -> tuple[Graph, Graph, list]:
    n = g.n
    h = disjoint_union(g, complete(s))
    joins = [(v, n + i) for i in range(s)]
    return h, h.add_edges(joins), joins


def _append(A: np.ndarray, g: Graph, v: int, lam: float, s: int, tol: Tolerances,
            epsilon: float | None, budget: int, trace: Trace) -> tuple[np.ndarray, Graph]:
    n = A.shape[0]
    h, hp, joins = _clique_pattern(g, v, s)
    start = direct_sum(A, lam * np.eye(s))
    eps = default_epsilon(A) if epsilon is None else float(epsilon)
    # to leading order the new diagonal moves by s0^2 (A - lam I)^{-1}_{vv};
    # s0 must make that shift resolvable at group_tol
    g_vv = float(np.linalg.solve(A - lam * np.eye(n), np.eye(n)[:, v])[v])
    scale = _spectral_scale(np.append(eigvalsh(A), lam))
    cap = eps / (2 * np.sqrt(2 * s) + 1)
    policy = min(eps / (4 * s + 1), 1e-2 * scale)
    floor = np.sqrt(100 * tol.group_tol / max(abs(g_vv), 1e-300))
    step = min(max(policy, floor), cap)
    target = np.append(eigvalsh(A), [lam] * s)
    reasons = []
    tried = set()
    for _ in range(10):
        if step in tried:
            break
        tried.add(step)
        out, why = _perturb_once(start, hp, joins, step, eps, tol, budget, trace)
        if out is not None:
            new_diag = np.diag(out)[n:]
            block = out[n:, n:][~np.eye(s, dtype=bool)]
            if np.min(np.abs(new_diag - lam)) <= tol.group_tol:
                why, grow = "a new diagonal entry is not resolved from the repeated eigenvalue", True
            elif block.size and np.min(np.abs(block)) <= tol.zero_tol:
                why, grow = "an entry inside the new clique vanished", True
            elif multiset_distance(eigvalsh(out), target) > 10 * tol.eig_tol * scale:
                why, grow = "spectrum differs from the requested union", False
            else:
                return out, hp
        else:
            grow = False
        reasons.append(f"s0={step:.3e}: {why}")
        step = min(2 * step, cap) if grow else step / 2
    raise ContinuationError(f"appending K_{s + 1} at vertex {v} with eigenvalue {lam} failed; "
                            + "; ".join(reasons))


def append_clique(a, g: Graph, v: int, lam: float, s: int, tol: Tolerances = DEFAULT_TOL,
                  epsilon: float | None = None, budget: int = DEFAULT_BUDGET,
                  trace: Trace = None) -> tuple[np.ndarray, Graph]:
    """Glue ``K_{s+1}`` onto vertex ``v`` and add ``lam`` with multiplicity ``s``.

    The new vertices take labels ``n..n+s-1``.  Besides the spectrum and the
    SSP, the result is checked to have nonzero entries throughout the new
    clique and new diagonal entries different from ``lam``.
    """
    A = as_symmetric(a)
    n = A.shape[0]
    if g.n != n:
        raise ValueError("graph order does not match matrix dimension")
    if not (0 <= v < n):
        raise ValueError(f"vertex {v} out of range")
    if s < 1:
        raise ValueError("clique must add at least one vertex")
    if not _avoids(lam, eigvalsh(A), tol.group_tol):
        raise ValueError(f"{lam} is already an eigenvalue of the matrix")
    if not _avoids(lam, eigvalsh(principal_submatrix(A, v)), tol.group_tol):
        raise ValueError(f"{lam} is an eigenvalue of the submatrix with vertex {v} removed")
    if not has_ssp(A, g, tol).has_ssp:
        raise ValueError("matrix does not have the SSP with respect to the graph")
    return _append(A, g, v, float(lam), int(s), tol, epsilon, budget, trace)


def _remaining_ok(A: np.ndarray, later: Sequence[float], tol: Tolerances) -> bool:
    if not later:
        return True
    spectra = [eigvalsh(A)] + [eigvalsh(principal_submatrix(A, v)) for v in range(A.shape[0])]
    return all(_avoids(x, sp, tol.group_tol) for x in later for sp in spectra)


def append_cliques_chain(a, g: Graph, attachments: Sequence[tuple[int, float, int]],
                         tol: Tolerances = DEFAULT_TOL, epsilon: float | None = None,
                         budget: int = DEFAULT_BUDGET, trace: Trace = None) -> tuple[np.ndarray, Graph]:
    """Apply ``append_clique`` for each ``(v, lam, m)`` in turn.

    Vertex labels refer to the graph as it stands before that step.  After
    each step the eigenvalues still to be added must avoid the spectrum of
    the current matrix and of all its vertex-deleted submatrices; when one
    does not, the step is redone closer to the direct sum.
    """
    A = as_symmetric(a)
    if g.n != A.shape[0]:
        raise ValueError("graph order does not match matrix dimension")
    lams = [float(t[1]) for t in attachments]
    for i in range(len(lams)):
        for j in range(i):
            if abs(lams[i] - lams[j]) <= tol.group_tol:
                raise ValueError("appended eigenvalues must be distinct")
    if not _remaining_ok(A, lams, tol):
        raise ValueError("an appended eigenvalue meets the spectrum of the matrix or of a "
                         "vertex-deleted submatrix")
    G = g
    for k, (v, lam, m) in enumerate(attachments):
        eps = default_epsilon(A) if epsilon is None else float(epsilon)
        later = lams[k + 1:]
        for _ in range(4):
            try:
                A2, G2 = append_clique(A, G, int(v), float(lam), int(m), tol, eps, budget, trace)
            except (ContinuationError, ValueError) as exc:
                raise ContinuationError(f"step {k}: {exc}") from exc
            if _remaining_ok(A2, later, tol):
                break
            eps /= 4
        else:
            raise ContinuationError(f"step {k}: later eigenvalues collide with a submatrix spectrum")
        A, G = A2, G2
    return A, G
