"""Multiplicity-list combinatorics and end-to-end realization.

Block-graph route
-----------------
1. Collapse ``G`` to its minimal block graph ``G0`` (a single clique is its
   own ``G0``).
2. Search for a refinement ``r`` of ``{k, m_d + 1 - k, m_i (i != d)}`` that
   the target multiplicity list covers, for a distinguished block ``d``.
3. Split the target spectrum into ``sigma0`` (multiplicity list ``r``) and
   the leftover copies ``sigma'``.
4. Build ``A0`` on a spanning clique-chain subgraph of ``G0``: a two-eigenvalue
   seed clique, then one appended clique per remaining part.
5. Perturb onto ``G0`` and blow up with ``sigma'``.

Blowup route
------------
Reduce ``G`` by closed twins to a connected base graph, realize ``n_base``
distinct target values on the base with diagonals avoiding the rest, and
blow up.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import islice, product
from typing import Iterator, Optional, Sequence

import numpy as np

from .constructors import as_rng, blowup_realize, diag_avoiding_realize, two_eig_complete
from .continuation import append_cliques_chain, default_epsilon, ssp_supergraph_perturb
from .errors import (ContinuationError, ConstructionError, InfeasibleError,
                     NotCertifiedError, SearchBudgetExhausted)
from .graphs import (BlowupSpec, Graph, GraphError, barbell, block_decomposition, blowup,
                     closed_twin_reduction, complete, is_block_graph, is_connected, lollipop,
                     minimal_block_graph)
from .linalg import (DEFAULT_TOL, Tolerances, eigvalsh, group_values,
                     matrix_to_dict, multiset_distance, pattern_of)
from .ssp import has_ssp

__all__ = [
    "partitions",
    "is_refinement",
    "enumerate_refinements",
    "covers",
    "multiplicity_list",
    "FeasibilityWitness",
    "feasible_multiplicity",
    "RealizationCertificate",
    "realize_block_graph",
    "realize_blowup",
    "realize_lollipop",
    "realize_barbell",
    "clique_path_blocks",
    "feasibility_check_clique_path",
    "realize",
    "ROUTES",
    "REFINEMENT_CAP",
]

REFINEMENT_CAP = 10_000
SEED_DRAWS = 5


# ---------------------------------------------------------------- combinatorics

def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Integer partitions of ``n`` as non-increasing tuples, in descending
    lexicographic order (``(n,)`` first)."""
    if n < 0:
        raise ValueError("cannot partition a negative integer")
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first, *rest)


def is_refinement(parts: Sequence[Sequence[int]], m: Sequence[int]) -> bool:
    """``parts[i]`` is the multiset assigned to ``m[i]``; true when every
    group is a nonempty set of positive integers summing to its element."""
    if len(parts) != len(m):
        return False
    for grp, a in zip(parts, m):
        grp = list(grp)
        if not grp or any(int(b) < 1 for b in grp) or sum(grp) != a:
            return False
    return True


def enumerate_refinements(m: Sequence[int], cap: int | None = None) -> Iterator[tuple]:
    """All refinements of ``m`` as tuples of per-element partitions.

    Ordered lexicographically over the elements of ``m`` with each element's
    partitions coarsest first; at most ``cap`` items are produced.
    """
    m = [int(a) for a in m]
    if any(a < 1 for a in m):
        raise ValueError("multiplicities must be positive")
    stream = product(*[list(partitions(a)) for a in m])
    return islice(stream, cap) if cap is not None else stream


def covers(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) < len(b):
        return False
    sa = sorted(a, reverse=True)
    sb = sorted(b, reverse=True)
    return all(x >= y for x, y in zip(sa, sb))


def multiplicity_list(sigma: Sequence[float], tol: Tolerances = DEFAULT_TOL) -> list[int]:
    return sorted((c for _, c in group_values(sigma, tol.group_tol)), reverse=True)


# ---------------------------------------------------------------- feasibility

def _minimal_stage(g: Graph) -> tuple[Graph, BlowupSpec]:
    dec = block_decomposition(g)
    if len(dec.blocks) == 1:
        return g, blowup(g, [1] * g.n)
    return minimal_block_graph(g)


@dataclass(frozen=True)
class FeasibilityWitness:
    """Certificate that a multiplicity list is covered.

    ``block_parts[i]`` is the partition assigned to block ``i`` of the
    minimal block graph; for the distinguished block it partitions
    ``m_d + 1 - k`` and the whole part ``k`` is kept separately.
    """

    distinguished_block: int
    k: int
    block_parts: tuple
    target: tuple

    @property
    def refinement(self) -> list[int]:
        flat = [self.k] + [b for grp in self.block_parts for b in grp]
        return sorted(flat, reverse=True)

    def to_dict(self) -> dict:
        return {"block": self.distinguished_block, "k": self.k, "refinement": self.refinement,
                "block_parts": [list(p) for p in self.block_parts]}


def feasible_multiplicity(g: Graph, target: Sequence[int],
                          cap: int = REFINEMENT_CAP) -> Optional[FeasibilityWitness]:
    """Search for a covered refinement.

    ``None`` means the method does not certify the list, not that it is
    infeasible.  ``SearchBudgetExhausted`` is raised when some ``(block, k)``
    pair was truncated at ``cap`` and no witness turned up.
    """
    target = tuple(sorted((int(t) for t in target), reverse=True))
    if any(t < 1 for t in target):
        raise ValueError("multiplicities must be positive")
    if sum(target) != g.n:
        raise ValueError(f"multiplicities sum to {sum(target)}, graph has {g.n} vertices")
    if g.n == 1:
        return FeasibilityWitness(0, 1, ((),), target) if target == (1,) else None
    if not is_connected(g):
        raise GraphError("graph must be connected")
    if not is_block_graph(g):
        raise GraphError("graph is not a block graph")
    g0, _ = _minimal_stage(g)
    blocks = block_decomposition(g0).blocks
    m = [len(b) - 1 for b in blocks]
    order = sorted(range(len(blocks)), key=lambda i: (-len(blocks[i]), i))
    truncated = False
    for d in order:
        others = [i for i in range(len(blocks)) if i != d]
        for k in range(m[d], 0, -1):
            elems = [m[d] + 1 - k] + [m[i] for i in others]
            # cheap bound: the coarsest refinement already needs this many parts
            if len(elems) + 1 > len(target):
                continue
            count = 0
            for ref in enumerate_refinements(elems, cap):
                count += 1
                flat = [k] + [b for grp in ref for b in grp]
                if covers(target, flat):
                    parts = [()] * len(blocks)
                    parts[d] = ref[0]
                    for i, grp in zip(others, ref[1:]):
                        parts[i] = grp
                    return FeasibilityWitness(d, k, tuple(parts), target)
            if count >= cap:
                truncated = True
    if truncated:
        raise SearchBudgetExhausted(f"refinement search truncated at {cap} per (block, k)")
    return None


# ---------------------------------------------------------------- certificates

@dataclass
class RealizationCertificate:
    graph: Graph
    target_spectrum: list
    matrix: np.ndarray
    spectral_deviation: float
    pattern_ok: bool
    ssp: Optional[dict]
    witness: Optional[dict]
    stages: list = field(default_factory=list)
    route: str = ""
    minimal_stage: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.pattern_ok and self.spectral_deviation <= spectral_bound(self.target_spectrum)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "target_spectrum": [float(x) for x in self.target_spectrum],
            "matrix": matrix_to_dict(self.matrix),
            "spectral_deviation": float(self.spectral_deviation),
            "pattern_ok": bool(self.pattern_ok),
            "ssp": self.ssp,
            "witness": self.witness,
            "stages": self.stages,
            "route": self.route,
            "minimal_stage": self.minimal_stage,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


def spectral_bound(sigma: Sequence[float]) -> float:
    s = np.asarray(sigma, dtype=float)
    return 1e-6 * (1.0 + (float(np.max(np.abs(s))) if s.size else 0.0))


def _certify(g: Graph, sigma, A, tol, route, stages, ssp=None, witness=None,
             minimal=None) -> RealizationCertificate:
    dev = multiset_distance(eigvalsh(A), sigma)
    ok = pattern_of(A, tol.zero_tol) == g
    cert = RealizationCertificate(g, sorted(float(x) for x in sigma), A, dev, ok, ssp, witness,
                                  stages, route, minimal)
    if not cert.ok:
        raise ConstructionError(f"{route} route produced an invalid matrix "
                                f"(deviation {dev:.2e}, pattern_ok={ok})")
    return cert


def _json_float(x: float):
    return float(x) if np.isfinite(x) else None


def _gap(values, forbid) -> float:
    v = np.asarray(list(values), dtype=float)
    f = np.asarray(list(forbid), dtype=float)
    if v.size == 0 or f.size == 0:
        return np.inf
    return float(np.min(np.abs(v[:, None] - f[None, :])))


# ---------------------------------------------------------------- block graphs

def _split_spectrum(sigma, witness: FeasibilityWitness, tol: Tolerances):
    """Distinct eigenvalue for each refinement part plus leftover copies.

    Parts in witness order: ``k`` first, then each block's partition.  Value
    groups sorted by (multiplicity desc, value asc) are matched to parts
    sorted by size desc.
    """
    groups = group_values(sigma, tol.group_tol)
    # use actual members rather than group means so sigma0 + sigma' == sigma
    svals = sorted(float(x) for x in sigma)
    members, pos = [], 0
    for _, c in groups:
        members.append(svals[pos:pos + c])
        pos += c
    gorder = sorted(range(len(groups)), key=lambda i: (-groups[i][1], groups[i][0]))
    parts = [witness.k] + [b for grp in witness.block_parts for b in grp]
    porder = sorted(range(len(parts)), key=lambda j: (-parts[j], j))
    if len(porder) > len(gorder):
        raise NotCertifiedError("fewer distinct values than refinement parts")
    lam = [0.0] * len(parts)
    extra = []
    used = set()
    for j, gi in zip(porder, gorder):
        if groups[gi][1] < parts[j]:
            raise NotCertifiedError("multiplicity list does not cover the refinement")
        lam[j] = members[gi][0]
        extra += members[gi][parts[j]:]
        used.add(gi)
    for gi in range(len(groups)):
        if gi not in used:
            extra += members[gi]
    return lam, parts, sorted(extra)


def _chain_plan(g0: Graph, witness: FeasibilityWitness):
    """Creation order of ``G0``'s vertices and the append schedule.

    Returns ``(order, seed_size, attachments)``: ``order[c]`` is the ``G0``
    label of the vertex created ``c``-th, the first ``seed_size`` form the
    seed clique, and ``attachments`` lists ``(creation label, part, size)``
    per appended clique, where ``part`` indexes the flattened witness parts
    (``k`` first, then each block's partition in block order).

    Blocks are visited breadth-first from the distinguished block.  Inside a
    block the attachment vertex comes first, then the other cut vertices, so
    every later block finds its anchor already built.
    """
    dec = block_decomposition(g0)
    blocks = dec.blocks
    offsets, pos = [], 1
    for grp in witness.block_parts:
        offsets.append(pos)
        pos += len(grp)
    d = witness.distinguished_block
    order: list[int] = []
    created: dict[int, int] = {}
    attachments = []
    seed_size = 0
    seen = {d}
    queue = deque([(d, None)])
    while queue:
        b, anchor = queue.popleft()
        blk = blocks[b]
        cuts = [v for v in blk if v in dec.cut_vertices and v != anchor]
        rest = [v for v in blk if v not in dec.cut_vertices and v != anchor]
        verts = ([] if anchor is None else [anchor]) + cuts + rest
        sizes = list(witness.block_parts[b])
        if b == d:
            seed_size = witness.k + sizes[0]
            for v in verts[:seed_size]:
                created[v] = len(order)
                order.append(v)
            cursor, prev, first = seed_size, verts[seed_size - 1], 1
        else:
            cursor, prev, first = 1, anchor, 0
        for j in range(first, len(sizes)):
            size = sizes[j]
            for v in verts[cursor:cursor + size]:
                created[v] = len(order)
                order.append(v)
            attachments.append((created[prev], offsets[b] + j, size))
            prev = verts[cursor + size - 1]
            cursor += size
        for v in cuts + ([anchor] if anchor is not None else []):
            for nb in dec.blocks_of(v):
                if nb not in seen:
                    seen.add(nb)
                    queue.append((nb, v))
    return order, seed_size, attachments


def realize_block_graph(g: Graph, sigma: Sequence[float], seed=None, tol: Tolerances = DEFAULT_TOL,
                        witness: FeasibilityWitness | None = None,
                        trace=None) -> tuple[np.ndarray, RealizationCertificate]:
    sigma = sorted(float(x) for x in sigma)
    if len(sigma) != g.n:
        raise ValueError(f"need {g.n} eigenvalues, got {len(sigma)}")
    if g.n == 1:
        A = np.array([[sigma[0]]])
        return A, _certify(g, sigma, A, tol, "block", [], None, None)
    if witness is None:
        witness = feasible_multiplicity(g, multiplicity_list(sigma, tol))
        if witness is None:
            raise NotCertifiedError("the multiplicity list covers no refinement of the "
                                    "minimal block graph's block sizes")
    rng = as_rng(seed)
    g0, bspec = _minimal_stage(g)
    lam, parts, extra = _split_spectrum(sigma, witness, tol)
    stages = [{"stage": "split", "parts": parts, "values": lam, "extra": extra}]

    order, seed_size, attachments = _chain_plan(g0, witness)
    if sorted(order) != list(range(g0.n)):
        raise ConstructionError("clique-chain plan does not span the minimal block graph")
    d_first = 1 + sum(len(p) for p in witness.block_parts[:witness.distinguished_block])
    later = [lam[p] for _, p, _ in attachments]
    chain = [(v, lam[p], size) for v, p, size in attachments]
    # a seed draw can leave some appended diagonal stuck at its eigenvalue
    # (the resolvent entry at the attachment vertex vanishes); redraw it
    failures = []
    for draw in range(SEED_DRAWS):
        A = two_eig_complete(lam[0], lam[d_first], witness.k, parts[d_first],
                             forbid_submatrix=later, forbid_diag=extra, seed=rng, tol=tol)
        try:
            Ahat, Ghat = append_cliques_chain(A, complete(seed_size), chain, tol=tol, trace=trace)
            break
        except ContinuationError as exc:
            failures.append(f"draw {draw}: {exc}")
    else:
        raise ContinuationError("clique appending failed for every seed draw: "
                                + "; ".join(failures))
    stages.append({"stage": "seed", "size": seed_size, "draws": len(failures) + 1})
    stages.append({"stage": "append", "cliques": len(chain)})

    # creation labels -> G0 labels
    inv = np.argsort(order)
    A_hat0 = Ahat[np.ix_(inv, inv)]
    G_hat0 = Ghat.relabel(list(order))
    if not set(G_hat0.edges) <= set(g0.edges):
        raise ConstructionError("clique-chain subgraph is not contained in the minimal block graph")

    A0 = None
    eps = default_epsilon(A_hat0)
    reasons = []
    for _ in range(6):
        try:
            cand = ssp_supergraph_perturb(A_hat0, G_hat0, g0, epsilon=eps, tol=tol, trace=trace)
        except ContinuationError as exc:
            reasons.append(str(exc))
            eps /= 4
            continue
        if _gap(np.diag(cand), extra) > tol.group_tol:
            A0 = cand
            break
        reasons.append(f"epsilon {eps:.2e}: a diagonal entry met a leftover eigenvalue")
        eps /= 4
    if A0 is None:
        raise ContinuationError("perturbation onto the minimal block graph failed: "
                                + "; ".join(reasons))
    verdict = has_ssp(A0, g0, tol)
    stages.append({"stage": "perturb", "new_edges": g0.num_edges - G_hat0.num_edges,
                   "diag_gap": _json_float(_gap(np.diag(A0), extra))})
    A = blowup_realize(A0, extra, bspec, seed=rng, tol=tol)
    stages.append({"stage": "blowup", "added": len(extra)})
    minimal = {"graph": g0.to_dict(), "matrix": matrix_to_dict(A0),
               "vertex_map": list(bspec.vertex_map)}
    cert = _certify(g, sigma, A, tol, "block", stages, verdict.to_dict(), witness.to_dict(), minimal)
    return A, cert


# ---------------------------------------------------------------- blowup route

def _choose_base_values(sigma: Sequence[float], n: int, tol: Tolerances):
    groups = group_values(sigma, tol.group_tol)
    svals = sorted(float(x) for x in sigma)
    members, pos = [], 0
    for _, c in groups:
        members.append(svals[pos:pos + c])
        pos += c
    if len(groups) < n:
        return None
    # repeated values first so their leftover copies are spread by the blowup
    idx = sorted(range(len(groups)), key=lambda i: (groups[i][1] == 1, groups[i][0]))[:n]
    base = sorted(members[i][0] for i in idx)
    extra = sorted([x for i in idx for x in members[i][1:]]
                   + [x for i in range(len(groups)) if i not in idx for x in members[i]])
    return base, extra


def realize_blowup(g: Graph, sigma: Sequence[float], seed=None, tol: Tolerances = DEFAULT_TOL,
                   bspec: BlowupSpec | None = None,
                   trace=None) -> tuple[np.ndarray, RealizationCertificate]:
    """Realize ``sigma`` on a blowup of a connected base graph whose order is
    at most the number of distinct values in ``sigma``."""
    sigma = sorted(float(x) for x in sigma)
    if len(sigma) != g.n:
        raise ValueError(f"need {g.n} eigenvalues, got {len(sigma)}")
    spec = closed_twin_reduction(g) if bspec is None else bspec
    if spec.graph != g:
        raise ValueError("blowup description does not reproduce the graph")
    base = spec.base
    if base.n < 2 or not is_connected(base):
        raise NotCertifiedError("blowup route needs a connected base graph on at least two vertices")
    choice = _choose_base_values(sigma, base.n, tol)
    if choice is None:
        raise NotCertifiedError(f"blowup route needs {base.n} distinct values, "
                                f"got {len(group_values(sigma, tol.group_tol))}")
    base_vals, extra = choice
    rng = as_rng(seed)
    A0 = diag_avoiding_realize(base, base_vals, forbid=extra, seed=rng, tol=tol, trace=trace)
    verdict = has_ssp(A0, base, tol)
    stages = [{"stage": "base", "order": base.n, "values": base_vals,
               "diag_gap": _json_float(_gap(np.diag(A0), extra))}]
    A = blowup_realize(A0, extra, spec, seed=rng, tol=tol)
    stages.append({"stage": "blowup", "added": len(extra)})
    minimal = {"graph": base.to_dict(), "matrix": matrix_to_dict(A0),
               "vertex_map": list(spec.vertex_map)}
    return A, _certify(g, sigma, A, tol, "blowup", stages, verdict.to_dict(), None, minimal)


def _distinct(sigma, tol: Tolerances) -> int:
    return len(group_values(sigma, tol.group_tol))


def realize_lollipop(k: int, p: int, sigma: Sequence[float], seed=None,
                     tol: Tolerances = DEFAULT_TOL, trace=None):
    """``L_{k,p}`` is a blowup of ``P_{p+2}``; realizable exactly when
    ``sigma`` has at least ``p + 2`` distinct values."""
    g = lollipop(k, p)
    if len(sigma) != g.n:
        raise ValueError(f"need {g.n} eigenvalues, got {len(sigma)}")
    d = _distinct(sigma, tol)
    if d < p + 2:
        raise InfeasibleError(
            f"L_({k},{p}) contains a unique shortest path on {p + 2} vertices, so every matrix "
            f"in S(L_({k},{p})) has at least {p + 2} distinct eigenvalues; got {d}")
    return realize_blowup(g, sigma, seed, tol, trace=trace)


def realize_barbell(k1: int, p: int, k2: int, sigma: Sequence[float], seed=None,
                    tol: Tolerances = DEFAULT_TOL, trace=None):
    """``B_{k1,p,k2}`` is a blowup of ``P_{p+4}``; realizable exactly when
    ``sigma`` has at least ``p + 4`` distinct values."""
    g = barbell(k1, p, k2)
    if len(sigma) != g.n:
        raise ValueError(f"need {g.n} eigenvalues, got {len(sigma)}")
    d = _distinct(sigma, tol)
    if d < p + 4:
        raise InfeasibleError(
            f"B_({k1},{p},{k2}) contains a unique shortest path on {p + 4} vertices, so every "
            f"matrix in its class has at least {p + 4} distinct eigenvalues; got {d}")
    return realize_blowup(g, sigma, seed, tol, trace=trace)


# ---------------------------------------------------------------- clique paths

def clique_path_blocks(g: Graph) -> Optional[list[int]]:
    """Block sizes along the chain if ``g`` is a clique-path, else ``None``."""
    if g.n < 2 or not is_connected(g) or not is_block_graph(g):
        return None
    dec = block_decomposition(g)
    blocks = dec.blocks
    if len(blocks) == 1:
        return [len(blocks[0])]
    cuts_in = [[v for v in b if v in dec.cut_vertices] for b in blocks]
    if any(len(dec.blocks_of(v)) != 2 for v in dec.cut_vertices):
        return None
    if any(len(c) > 2 for c in cuts_in):
        return None
    ends = [i for i, c in enumerate(cuts_in) if len(c) == 1]
    if len(ends) != 2:
        return None
    seq, prev, cur = [], None, ends[0]
    while cur is not None:
        seq.append(len(blocks[cur]))
        nxt = None
        for v in cuts_in[cur]:
            for b in dec.blocks_of(v):
                if b != cur and b != prev:
                    nxt = b
        prev, cur = cur, nxt
    return seq if len(seq) == len(blocks) else None


def feasibility_check_clique_path(sizes: Sequence[int], sigma: Sequence[float],
                                  tol: Tolerances = DEFAULT_TOL) -> str:
    """``"infeasible"`` when ``sigma`` has at most ``h`` distinct values (the
    minimum number of distinct eigenvalues of a clique-path with ``h``
    blocks is ``h + 1``); ``"feasible"`` when every block except the two ends
    and at most one interior block is an edge and there are at least
    ``h + 1`` distinct values; ``"unknown"`` otherwise."""
    sizes = [int(b) for b in sizes]
    if not sizes or any(b < 2 for b in sizes):
        raise ValueError("clique-path blocks must have size at least 2")
    h = len(sizes)
    order = 1 + sum(b - 1 for b in sizes)
    if len(sigma) != order:
        raise ValueError(f"need {order} eigenvalues, got {len(sigma)}")
    d = _distinct(sigma, tol)
    if d <= h:
        return "infeasible"
    big_interior = sum(1 for b in sizes[1:-1] if b > 2)
    return "feasible" if big_interior <= 1 else "unknown"


# ---------------------------------------------------------------- dispatcher

ROUTES = ("auto", "block", "blowup")


def realize(g: Graph, sigma: Sequence[float], seed=None, tol: Tolerances = DEFAULT_TOL,
            trace=None, route: str = "auto") -> tuple[np.ndarray, RealizationCertificate]:
    """Try the implemented routes (both for ``"auto"``, block graphs first).

    Raises ``InfeasibleError`` only for clique-paths below their distinct
    value threshold and ``NotCertifiedError`` when no route applies.
    """
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
    sigma = [float(x) for x in sigma]
    if len(sigma) != g.n:
        raise ValueError(f"need {g.n} eigenvalues, got {len(sigma)}")
    if g.n == 1:
        return realize_block_graph(g, sigma, seed, tol)
    if not is_connected(g):
        raise NotCertifiedError("disconnected graphs are not handled")
    failures = []
    block = is_block_graph(g)
    if route == "block" and not block:
        raise NotCertifiedError("block route requested for a graph that is not a block graph")
    if block:
        kp = clique_path_blocks(g)
        if kp is not None and _distinct(sigma, tol) <= len(kp):
            raise InfeasibleError(
                f"a clique-path with {len(kp)} blocks has at least {len(kp) + 1} distinct "
                f"eigenvalues; got {_distinct(sigma, tol)}")
    if block and route != "blowup":
        try:
            witness = feasible_multiplicity(g, multiplicity_list(sigma, tol))
        except SearchBudgetExhausted as exc:
            witness = None
            failures.append(str(exc))
        if witness is not None:
            try:
                return realize_block_graph(g, sigma, seed, tol, witness, trace)
            except (ConstructionError, ContinuationError) as exc:
                failures.append(f"block route: {exc}")
        else:
            failures.append("block route: multiplicity list not covered")
    if route == "block":
        raise NotCertifiedError("; ".join(failures))
    try:
        return realize_blowup(g, sigma, seed, tol, trace=trace)
    except NotCertifiedError as exc:
        failures.append(f"blowup route: {exc}")
    except (ConstructionError, ContinuationError) as exc:
        failures.append(f"blowup route: {exc}")
    raise NotCertifiedError("; ".join(failures))
