"""Direct matrix constructions.

Everything that relies on a genericity argument ("the parameters can be
chosen so that ...") is implemented as draw, check explicitly, redraw; the
checks are eigendecompositions and entry inspections, never assumptions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConstructionError
from .graphs import BlowupSpec, Graph, is_connected, spanning_star_forest, star
from .linalg import (DEFAULT_TOL, Spectrum, Tolerances, as_symmetric, eigvalsh,
                     in_pattern_strict, multiset_distance, pattern_of, principal_submatrix)
from .ssp import has_ssp

__all__ = [
    "RankOneBlockParams",
    "as_rng",
    "rank_one_block_matrix",
    "two_eig_complete",
    "complete_with_eigvec",
    "duplicate_vertex",
    "blowup_realize",
    "arrow_realize",
    "diag_avoiding_realize",
    "MIN_NONZERO",
]

# smallest magnitude accepted for an entry that must be nonzero
MIN_NONZERO = 1e-6
RESAMPLE_BUDGET = 200


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _spectral_bound(values) -> float:
    vals = np.asarray(list(values), dtype=float)
    return 1e-9 * (1.0 + (np.max(np.abs(vals)) if vals.size else 0.0))


def _gap(values, forbid) -> float:
    """Smallest distance from any of ``values`` to any of ``forbid``."""
    f = np.asarray(list(forbid), dtype=float)
    v = np.asarray(list(values), dtype=float)
    if f.size == 0 or v.size == 0:
        return np.inf
    return float(np.min(np.abs(v[:, None] - f[None, :])))


def _random_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.uniform(0.2, 1.0, size=n)
    return x / np.linalg.norm(x)


@dataclass(frozen=True)
class RankOneBlockParams:
    x: np.ndarray
    y: np.ndarray
    alpha1: float
    alpha2: float
    beta1: float
    beta2: float
    gamma: float


def rank_one_block_matrix(p: RankOneBlockParams) -> tuple[np.ndarray, Spectrum]:
    """Two-block matrix with rank-one blocks plus shifts, and its spectrum
    predicted from the 2x2 compression.

    The predicted eigenvalues are those of
    ``[[a1 |x|^2 + b1, g |x||y|], [g |x||y|, a2 |y|^2 + b2]]`` together with
    ``b1`` repeated ``len(x) - 1`` times and ``b2`` repeated ``len(y) - 1``
    times.
    """
    x = np.asarray(p.x, dtype=float).ravel()
    y = np.asarray(p.y, dtype=float).ravel()
    n1, n2 = x.size, y.size
    C = np.empty((n1 + n2, n1 + n2))
    C[:n1, :n1] = p.alpha1 * np.outer(x, x) + p.beta1 * np.eye(n1)
    C[:n1, n1:] = p.gamma * np.outer(x, y)
    C[n1:, :n1] = p.gamma * np.outer(y, x)
    C[n1:, n1:] = p.alpha2 * np.outer(y, y) + p.beta2 * np.eye(n2)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    compressed = np.array([[p.alpha1 * nx**2 + p.beta1, p.gamma * nx * ny],
                           [p.gamma * nx * ny, p.alpha2 * ny**2 + p.beta2]])
    mu = np.linalg.eigvalsh(compressed)
    predicted = list(mu) + [p.beta1] * (n1 - 1) + [p.beta2] * (n2 - 1)
    return C, Spectrum.from_values(predicted)


def two_eig_complete(lam1: float, lam2: float, n1: int, n2: int,
                     forbid_submatrix: Sequence[float] = (), forbid_diag: Sequence[float] = (),
                     seed=None, tol: Tolerances = DEFAULT_TOL, budget: int = RESAMPLE_BUDGET,
                     alpha1: float | None = None) -> np.ndarray:
    """Matrix in S(K_{n1+n2}) with spectrum ``{lam1^(n1), lam2^(n2)}``.

    Every vertex-deleted submatrix has no eigenvalue within ``group_tol`` of
    ``forbid_submatrix`` and no diagonal entry is within ``group_tol`` of
    ``forbid_diag``.  The first ``n1`` rows carry ``lam1``'s block.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("both multiplicities must be positive")
    if abs(lam1 - lam2) <= tol.group_tol:
        raise ValueError("the two eigenvalues must be distinct")
    if _gap([lam1, lam2], forbid_submatrix) <= tol.group_tol:
        raise ValueError("forbid_submatrix may not contain either target eigenvalue")
    rng = as_rng(seed)
    swap = lam1 > lam2
    lo, hi = (lam2, lam1) if swap else (lam1, lam2)
    n_lo, n_hi = (n2, n1) if swap else (n1, n2)
    width = hi - lo
    target = [lam1] * n1 + [lam2] * n2
    bound = _spectral_bound(target)
    n = n1 + n2
    for _ in range(budget):
        a1 = alpha1 if alpha1 is not None else float(rng.uniform(0.0, width))
        if not (0.0 < a1 < width):
            raise ValueError(f"alpha1 must lie in (0, {width})")
        params = RankOneBlockParams(
            x=_random_unit(rng, n_lo), y=_random_unit(rng, n_hi),
            alpha1=a1, alpha2=-a1, beta1=lo, beta2=hi,
            gamma=float(np.sqrt(a1 * (width - a1))))
        C, _ = rank_one_block_matrix(params)
        if swap:
            perm = list(range(n_lo, n)) + list(range(n_lo))
            C = C[np.ix_(perm, perm)]
        off = C[~np.eye(n, dtype=bool)]
        if np.min(np.abs(off)) <= MIN_NONZERO:
            continue
        if multiset_distance(eigvalsh(C), target) > bound:
            continue
        if _gap(np.diag(C), forbid_diag) <= tol.group_tol:
            continue
        if len(forbid_submatrix) and any(
                _gap(eigvalsh(principal_submatrix(C, v)), forbid_submatrix) <= tol.group_tol
                for v in range(n)):
            continue
        return as_symmetric(C)
    raise ConstructionError(
        f"two_eig_complete: no admissible draw in {budget} attempts "
        f"(lam=({lam1}, {lam2}), sizes=({n1}, {n2}), |F|={len(forbid_submatrix)}, "
        f"|G|={len(forbid_diag)})")


def complete_with_eigvec(mus: Sequence[float], mu1: float, pattern: Sequence[int] | None = None,
                         seed=None, tol: Tolerances = DEFAULT_TOL,
                         budget: int = RESAMPLE_BUDGET) -> tuple[np.ndarray, np.ndarray]:
    """``B`` in S(K_k) with spectrum ``mus`` and a unit eigenvector ``u`` for
    ``mu1`` whose zero/sign pattern is ``pattern`` (default: all positive).

    ``B = Q diag(mus) Q^T`` where ``Q`` is an orthonormal completion of
    ``u``; ``u``'s magnitudes and the completion are random and redrawn
    until every off-diagonal entry of ``B`` is safely nonzero.
    """
    vals = [float(m) for m in mus]
    k = len(vals)
    if k == 0:
        raise ValueError("empty spectrum")
    hits = [i for i, m in enumerate(vals) if abs(m - mu1) <= tol.group_tol]
    if not hits:
        raise ValueError(f"mu1={mu1} is not among the requested eigenvalues")
    if k == 1:
        return np.array([[float(mu1)]]), np.ones(1)
    if max(vals) - min(vals) <= tol.group_tol:
        raise ConstructionError(
            "all requested eigenvalues coincide; the only such matrix is a multiple of I")
    sign = np.ones(k) if pattern is None else np.sign(np.asarray(pattern, dtype=float))
    if sign.shape != (k,) or np.count_nonzero(sign) < 2:
        raise ValueError("eigenvector pattern must have length k and at least two nonzeros")
    rest = vals[:hits[0]] + vals[hits[0] + 1:]
    if np.count_nonzero(sign) < k and max(rest) - min(rest) <= tol.group_tol:
        # B - c I is then a multiple of u u^T, so zeros of u become zeros of B
        raise ConstructionError("a zero in the eigenvector pattern forces a zero entry when "
                                "the remaining eigenvalues all coincide")
    order = np.array([mu1] + rest)
    spread = max(vals) - min(vals)
    floor = min(MIN_NONZERO, 1e-2 * spread)
    offmask = ~np.eye(k, dtype=bool)
    rng = as_rng(seed)
    for _ in range(budget):
        u = sign * rng.uniform(0.2, 1.0, size=k)
        u /= np.linalg.norm(u)
        M = np.column_stack([u, rng.standard_normal((k, k - 1))])
        Q, R = np.linalg.qr(M)
        if R[0, 0] < 0:
            Q[:, 0] = -Q[:, 0]
        B = (Q * order) @ Q.T
        B = (B + B.T) / 2
        if np.min(np.abs(B[offmask])) <= floor:
            continue
        return B, Q[:, 0].copy()
    raise ConstructionError(f"complete_with_eigvec: no admissible draw in {budget} attempts")


def duplicate_vertex(a, v: int, b, u, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Replace vertex ``v`` of ``a`` by the ``k x k`` block ``b``.

    Requires ``b u = a[v, v] u`` with ``|u| = 1``.  The rows coupling the
    old neighbors to the new block are ``a[:, v] u^T``, and the result keeps
    every eigenvalue of ``a`` while adding those of ``b`` minus one copy of
    ``a[v, v]``.  The ``k`` new vertices take the labels ``v..v+k-1``; later
    vertices shift up by ``k - 1``.
    """
    A = as_symmetric(a)
    B = as_symmetric(b)
    u = np.asarray(u, dtype=float).ravel()
    n, k = A.shape[0], B.shape[0]
    if not (0 <= v < n):
        raise ValueError(f"vertex {v} out of range")
    if u.size != k:
        raise ValueError("eigenvector length must match the block size")
    if abs(np.linalg.norm(u) - 1.0) > 1e-9:
        raise ValueError("eigenvector must have unit norm")
    mu = A[v, v]
    resid = np.linalg.norm(B @ u - mu * u)
    if resid > 1e-9 * (1.0 + np.linalg.norm(B)):
        raise ValueError(f"u is not an eigenvector of B for a[v, v]={mu} (residual {resid:.2e})")
    others = [i for i in range(n) if i != v]
    col = A[others, v]
    N = n - 1 + k
    C = np.zeros((N, N))
    old = [i if i < v else i + k - 1 for i in others]
    new = list(range(v, v + k))
    C[np.ix_(old, old)] = A[np.ix_(others, others)]
    C[np.ix_(old, new)] = np.outer(col, u)
    C[np.ix_(new, old)] = np.outer(u, col)
    C[np.ix_(new, new)] = B
    target = list(eigvalsh(A)) + list(np.delete(eigvalsh(B), np.argmin(np.abs(eigvalsh(B) - mu))))
    if multiset_distance(eigvalsh(C), target) > 10 * _spectral_bound(target):
        raise ConstructionError("duplication did not preserve the expected spectrum")
    return C


def blowup_realize(a, spec_extra: Sequence[float], bspec: BlowupSpec, seed=None,
                   tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Realize ``spec(a)`` plus ``spec_extra`` on the blown-up graph.

    ``spec_extra`` is sorted and handed out in base-vertex order, ``m_i - 1``
    values to vertex ``i``.  Each duplicated vertex gets a complete-graph
    block with spectrum ``{a_ii} + part`` and a positive eigenvector for
    ``a_ii``.  The result is ordered according to ``bspec.vertex_map``.
    """
    A = as_symmetric(a)
    n = bspec.base.n
    if A.shape[0] != n:
        raise ValueError(f"matrix has dimension {A.shape[0]}, base graph has {n} vertices")
    extra = sorted(float(x) for x in spec_extra)
    need = sum(m - 1 for m in bspec.multiplicities)
    if len(extra) != need:
        raise ValueError(f"need {need} extra eigenvalues, got {len(extra)}")
    if _gap(np.diag(A), extra) <= tol.group_tol:
        raise ValueError("a diagonal entry of the base matrix coincides with an extra eigenvalue")
    rng = as_rng(seed)
    C = A
    offset = 0
    cursor = 0
    for i, m in enumerate(bspec.multiplicities):
        pos = i + offset
        if m > 1:
            part = extra[cursor:cursor + m - 1]
            cursor += m - 1
            aii = float(A[i, i])
            B, u = complete_with_eigvec([aii] + part, aii, seed=rng, tol=tol)
            C = duplicate_vertex(C, pos, B, u, tol)
            offset += m - 1
    # canonical order lists copies of base vertex i consecutively
    start = np.concatenate([[0], np.cumsum(bspec.multiplicities)[:-1]]).astype(int)
    used = [0] * n
    perm = []
    for b in bspec.vertex_map:
        perm.append(start[b] + used[b])
        used[b] += 1
    out = as_symmetric(C[np.ix_(perm, perm)])
    if pattern_of(out, tol.zero_tol) != bspec.graph:
        raise ConstructionError("blowup realization does not have the blown-up pattern")
    target = list(eigvalsh(A)) + extra
    if multiset_distance(eigvalsh(out), target) > _spectral_bound(target):
        raise ConstructionError("blowup realization lost the target spectrum")
    return out


def arrow_realize(lambdas: Sequence[float], mus: Sequence[float]) -> np.ndarray:
    """Arrow matrix on ``star(n)`` (center 0) with spectrum ``lambdas`` whose
    leaf submatrix has spectrum ``mus``.

    Leaf ``i`` carries diagonal ``mu_i`` and center coupling
    ``b_i = sqrt(-prod_j (mu_i - lam_j) / prod_{k != i} (mu_i - mu_k))``; the
    center diagonal is ``sum(lambdas) - sum(mus)``.
    """
    lam = np.sort(np.asarray(lambdas, dtype=float))
    mu = np.sort(np.asarray(mus, dtype=float))
    n = lam.size
    if n == 0:
        raise ValueError("need at least one eigenvalue")
    if mu.size != n - 1:
        raise ValueError(f"need {n - 1} interlacing values, got {mu.size}")
    if n == 1:
        return lam.reshape(1, 1).copy()
    if not (np.all(lam[:-1] < mu) and np.all(mu < lam[1:])):
        raise ValueError("values do not strictly interlace the eigenvalues")
    b = np.empty(n - 1)
    for i in range(n - 1):
        num = -np.prod(mu[i] - lam)
        den = np.prod(np.delete(mu[i] - mu, i))
        r = num / den
        if not r > 0:
            raise ConstructionError(f"nonpositive radicand {r} at leaf {i + 1}")
        b[i] = np.sqrt(r)
    A = np.diag(np.concatenate([[lam.sum() - mu.sum()], mu]))
    A[0, 1:] = b
    A[1:, 0] = b
    scale = _spectral_bound(lam)
    if multiset_distance(eigvalsh(A), lam) > scale * 10:
        raise ConstructionError("arrow matrix misses the target spectrum (ill-conditioned data)")
    if not has_ssp(A, star(n)).has_ssp:
        raise ConstructionError("arrow matrix lacks the SSP (ill-conditioned data)")
    return A


def _interlacing_choice(lam: np.ndarray, forbid, rng, tol: Tolerances, budget: int):
    """Draw interlacing values for one star and score how far they (and the
    implied center diagonal) stay from ``forbid``."""
    gaps = np.diff(lam)
    mids = (lam[:-1] + lam[1:]) / 2
    best = None
    goal = 0.05 * float(np.min(gaps))
    for _ in range(budget):
        mu = mids + rng.uniform(-0.25, 0.25, size=mids.size) * gaps
        center = lam.sum() - mu.sum()
        score = _gap(np.concatenate([mu, [center]]), forbid)
        if best is None or score > best[0]:
            best = (score, mu)
        if score >= goal:
            break
    return best


def diag_avoiding_realize(g: Graph, sigma: Sequence[float], forbid: Sequence[float] = (),
                          seed=None, tol: Tolerances = DEFAULT_TOL,
                          budget: int = RESAMPLE_BUDGET, trace=None) -> np.ndarray:
    """Matrix in S(g) with the SSP, distinct spectrum ``sigma`` and no
    diagonal entry within ``group_tol`` of ``forbid``.

    Covers ``g`` by a spanning star forest, realizes sorted consecutive slices
    of ``sigma`` on each star as arrow matrices, and moves the direct sum
    onto ``g`` by an SSP-preserving perturbation small enough to keep the
    diagonal clear of ``forbid``.
    """
    from .continuation import ssp_supergraph_perturb

    if g.n < 2 or not is_connected(g):
        raise ValueError("diag_avoiding_realize needs a connected graph on at least two vertices")
    lam = np.sort(np.asarray(sigma, dtype=float))
    if lam.size != g.n:
        raise ValueError(f"need {g.n} eigenvalues, got {lam.size}")
    if np.min(np.diff(lam)) <= tol.group_tol:
        raise ValueError("eigenvalues must be distinct")
    forbid = [float(f) for f in forbid]
    rng = as_rng(seed)
    stars = spanning_star_forest(g)
    A = np.zeros((g.n, g.n))
    forest_edges = []
    cursor = 0
    margin = np.inf
    for st in stars:
        k = 1 + len(st.leaves)
        part = lam[cursor:cursor + k]
        cursor += k
        score, mu = _interlacing_choice(part, forbid, rng, tol, budget)
        if score <= 10 * tol.group_tol:
            raise ConstructionError(
                f"could not place interlacing values for star {st} away from the forbidden set")
        margin = min(margin, score)
        local = arrow_realize(part, mu)
        idx = [st.center, *st.leaves]
        A[np.ix_(idx, idx)] = local
        forest_edges += [(st.center, leaf) for leaf in st.leaves]
    forest = Graph(g.n, forest_edges)
    if forest == g:
        return A
    if not has_ssp(A, forest, tol).has_ssp:
        raise ConstructionError("star-forest direct sum unexpectedly lacks the SSP")
    eps = 1e-2 * (1.0 + np.linalg.norm(A))
    if np.isfinite(margin):
        eps = min(eps, 0.5 * (margin - tol.group_tol))
    for _ in range(4):
        out = ssp_supergraph_perturb(A, forest, g, epsilon=eps, tol=tol, trace=trace)
        if (in_pattern_strict(out, g, tol.zero_tol)
                and _gap(np.diag(out), forbid) > tol.group_tol
                and has_ssp(out, g, tol).has_ssp):
            return out
        eps /= 4
    raise ConstructionError("perturbation onto the full pattern disturbed the diagonal avoidance")
