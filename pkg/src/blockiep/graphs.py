"""Labeled simple graphs and the graph families and operations used by the
realization constructions.

Vertices are always ``0..n-1``.  Every family constructor fixes its labeling
so that downstream matrices line up with the graph without any isomorphism
search:

* ``complete(n)``, ``path(n)``: vertices in order, path edges ``{i, i+1}``.
* ``star(n)``: center ``0``, leaves ``1..n-1``.
* ``lollipop(k, p)``: clique on ``0..k-1``; the path ``k..k+p-1`` hangs off
  vertex ``k-1``.
* ``barbell(k1, p, k2)``: clique on ``0..k1-1``, path ``k1..k1+p-1``, second
  clique on the last ``k2`` labels, entered through its lowest label.
* ``clique_path(b_1, ..., b_h)``: block ``i`` occupies the labels
  ``o_i..o_i+b_i-1`` with ``o_i = sum_{j<i} (b_j - 1)``; consecutive blocks
  share one label.
* ``clique_star(m_1, ..., m_h)``: center ``0``; block ``i`` is ``{0}`` plus the
  next ``m_i - 1`` labels.
* ``corona_complete(n)``: clique on ``0..n-1``, pendant ``n+i`` attached to
  ``i``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "Graph",
    "BlockDecomposition",
    "BlowupSpec",
    "Star",
    "GraphError",
    "complete",
    "path",
    "star",
    "empty",
    "lollipop",
    "barbell",
    "clique_path",
    "clique_star",
    "corona_complete",
    "vertex_sum",
    "blowup",
    "block_decomposition",
    "is_block_graph",
    "minimal_block_graph",
    "spanning_star_forest",
    "closed_twin_reduction",
    "complement",
    "disjoint_union",
    "is_subgraph",
    "is_connected",
    "parse_graph_text",
]


class GraphError(ValueError):
    """Raised for malformed graphs or operations on invalid vertices."""


def _edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the vertex set ``0..n-1``.

    ``edges`` may be given as any iterable of pairs; it is normalized to a
    frozenset of ``(i, j)`` tuples with ``i < j``.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise GraphError(f"vertex count must be a non-negative integer, got {self.n!r}")
        norm = set()
        for e in self.edges:
            i, j = (int(x) for x in e)
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphError(f"edge {{{i},{j}}} has an endpoint outside 0..{self.n - 1}")
            norm.add(_edge(i, j))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", frozenset(norm))

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        nbrs: list[set] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return tuple(frozenset(s) for s in nbrs)

    def neighbors(self, v: int) -> frozenset:
        self._check_vertex(v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and _edge(i, j) in self.edges

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise GraphError(f"vertex {v} not in 0..{self.n - 1}")

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabeled in ascending order of ``vertices``.

        Returns the subgraph and the list mapping new labels to old ones.
        """
        keep = sorted(set(vertices))
        for v in keep:
            self._check_vertex(v)
        pos = {v: k for k, v in enumerate(keep)}
        edges = [(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos]
        return Graph(len(keep), edges), keep

    def remove_vertex(self, v: int) -> tuple["Graph", list[int]]:
        self._check_vertex(v)
        return self.induced(u for u in range(self.n) if u != v)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``x`` renamed ``perm[x]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling must be a permutation of the vertex set")
        return Graph(self.n, [(perm[i], perm[j]) for i, j in self.edges])

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, set(self.edges) | {_edge(*e) for e in edges})

    # -- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        return f"{self.n}; " + ",".join(f"{i}-{j}" for i, j in self.sorted_edges())

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        try:
            n = data["n"]
            edges = data.get("edges", [])
        except (TypeError, KeyError) as exc:
            raise GraphError("graph JSON needs an integer field 'n' and a list 'edges'") from exc
        if not isinstance(n, int) or isinstance(n, bool):
            raise GraphError("graph JSON field 'n' must be an integer")
        if not isinstance(edges, list) or any(
            not isinstance(e, (list, tuple)) or len(e) != 2 for e in edges
        ):
            raise GraphError("graph JSON field 'edges' must be a list of [i, j] pairs")
        return cls(n, [tuple(e) for e in edges])

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        return cls.from_dict(json.loads(text))


def parse_graph_text(text: str) -> Graph:
    """Parse the one-line format ``"n; i-j,i-j,..."``."""
    head, sep, tail = text.strip().partition(";")
    try:
        n = int(head)
    except ValueError as exc:
        raise GraphError(f"edge-list text must start with the vertex count, got {head!r}") from exc
    edges = []
    for tok in tail.split(","):
        tok = tok.strip()
        if not tok:
            continue
        a, dash, b = tok.partition("-")
        if not dash:
            raise GraphError(f"malformed edge token {tok!r}, expected 'i-j'")
        try:
            edges.append((int(a), int(b)))
        except ValueError as exc:
            raise GraphError(f"malformed edge token {tok!r}") from exc
    return Graph(n, edges)


# -- families -----------------------------------------------------------

def _positive(name: str, n: int, minimum: int = 1) -> None:
    if int(n) != n or n < minimum:
        raise GraphError(f"{name} needs an integer >= {minimum}, got {n!r}")


def empty(n: int) -> Graph:
    return Graph(n)


def complete(n: int) -> Graph:
    _positive("complete", n)
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path(n: int) -> Graph:
    _positive("path", n)
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Graph:
    """Star on ``n`` vertices (``K_{1,n-1}``), center 0."""
    _positive("star", n)
    return Graph(n, [(0, i) for i in range(1, n)])


def lollipop(k: int, p: int) -> Graph:
    _positive("lollipop clique size", k, 2)
    _positive("lollipop path length", p, 0)
    edges = list(complete(k).edges)
    edges += [(i, i + 1) for i in range(k - 1, k + p - 1)]
    return Graph(k + p, edges)


def barbell(k1: int, p: int, k2: int) -> Graph:
    _positive("barbell clique size", k1, 2)
    _positive("barbell clique size", k2, 2)
    _positive("barbell path length", p, 0)
    n = k1 + p + k2
    c2 = k1 + p
    edges = list(complete(k1).edges)
    edges += [(i, i + 1) for i in range(k1 - 1, c2)]
    edges += [(c2 + i, c2 + j) for i in range(k2) for j in range(i + 1, k2)]
    return Graph(n, edges)


def clique_path(*sizes: int) -> Graph:
    if not sizes:
        raise GraphError("clique_path needs at least one block")
    for b in sizes:
        _positive("clique_path block size", b, 2)
    edges = []
    offset = 0
    for b in sizes:
        block = range(offset, offset + b)
        edges += [(i, j) for i in block for j in block if i < j]
        offset += b - 1
    return Graph(offset + 1, edges)


def clique_star(*sizes: int) -> Graph:
    if not sizes:
        raise GraphError("clique_star needs at least one block")
    for m in sizes:
        _positive("clique_star block size", m, 2)
    edges = []
    nxt = 1
    for m in sizes:
        block = [0] + list(range(nxt, nxt + m - 1))
        edges += [(i, j) for a, i in enumerate(block) for j in block[a + 1:]]
        nxt += m - 1
    return Graph(nxt, edges)


def corona_complete(n: int) -> Graph:
    """``K_n`` with one pendant vertex per clique vertex."""
    _positive("corona_complete", n)
    edges = list(complete(n).edges) + [(i, n + i) for i in range(n)]
    return Graph(2 * n, edges)


# -- operations ---------------------------------------------------------

def vertex_sum(g: Graph, v: int, h: Graph, w: int) -> Graph:
    """Glue ``h`` onto ``g`` by identifying ``h``'s vertex ``w`` with ``v``.

    ``g`` keeps its labels.  The remaining vertices of ``h`` follow in
    ascending order, starting at ``len(g)``.
    """
    g._check_vertex(v)
    h._check_vertex(w)
    new = {}
    nxt = g.n
    for u in range(h.n):
        if u == w:
            new[u] = v
        else:
            new[u] = nxt
            nxt += 1
    edges = set(g.edges) | {_edge(new[a], new[b]) for a, b in h.edges}
    return Graph(g.n + h.n - 1, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """``g`` followed by ``h`` with labels shifted by ``len(g)``."""
    return Graph(g.n + h.n, list(g.edges) + [(i + g.n, j + g.n) for i, j in h.edges])


def complement(g: Graph) -> Graph:
    return Graph(g.n, [(i, j) for i in range(g.n) for j in range(i + 1, g.n)
                       if (i, j) not in g.edges])


def is_subgraph(g: Graph, h: Graph) -> bool:
    """True when ``g`` is a spanning subgraph of ``h`` (same labels)."""
    return g.n == h.n and g.edges <= h.edges


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for x in g.adjacency[u]:
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return len(seen) == g.n


@dataclass(frozen=True)
class BlowupSpec:
    """A base graph, per-vertex multiplicities and the vertex map of the
    blown-up graph.

    ``vertex_map[x]`` is the base vertex that blown-up vertex ``x`` copies.
    Copies of one base vertex are mutually adjacent and share the base
    vertex's outside neighborhood.
    """

    base: Graph
    multiplicities: tuple
    vertex_map: tuple

    def __post_init__(self):
        mult = tuple(int(m) for m in self.multiplicities)
        vmap = tuple(int(x) for x in self.vertex_map)
        if len(mult) != self.base.n:
            raise GraphError(
                f"need one multiplicity per base vertex ({self.base.n}), got {len(mult)}")
        if any(m < 1 for m in mult):
            raise GraphError("blowup multiplicities must be positive")
        if len(vmap) != sum(mult):
            raise GraphError("vertex_map length must equal the sum of multiplicities")
        counts = [0] * self.base.n
        for b in vmap:
            if not (0 <= b < self.base.n):
                raise GraphError(f"vertex_map entry {b} is not a base vertex")
            counts[b] += 1
        if counts != list(mult):
            raise GraphError("vertex_map preimage sizes disagree with the multiplicities")
        object.__setattr__(self, "multiplicities", mult)
        object.__setattr__(self, "vertex_map", vmap)

    @property
    def order(self) -> int:
        return len(self.vertex_map)

    def preimage(self, b: int) -> list[int]:
        return [x for x, base in enumerate(self.vertex_map) if base == b]

    @cached_property
    def graph(self) -> Graph:
        vm = self.vertex_map
        m = len(vm)
        edges = [(x, y) for x in range(m) for y in range(x + 1, m)
                 if vm[x] == vm[y] or self.base.has_edge(vm[x], vm[y])]
        return Graph(m, edges)


def blowup(g: Graph, multiplicities: Sequence[int]) -> BlowupSpec:
    """Closed blowup: vertex ``i`` becomes a clique of ``multiplicities[i]``
    twins.  Copies of base vertex ``i`` get consecutive labels, in base order.
    """
    mult = [int(m) for m in multiplicities]
    if len(mult) != g.n:
        raise GraphError(f"need {g.n} multiplicities, got {len(mult)}")
    if any(m < 1 for m in mult):
        raise GraphError("zero or negative multiplicity in blowup")
    vmap = [i for i, m in enumerate(mult) for _ in range(m)]
    return BlowupSpec(g, tuple(mult), tuple(vmap))


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (as sorted vertex tuples, ordered by smallest vertex) and cut
    vertices."""

    blocks: tuple
    cut_vertices: frozenset

    def blocks_of(self, v: int) -> list[int]:
        return [b for b, blk in enumerate(self.blocks) if v in blk]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Biconnected components by iterative depth-first search with an edge
    stack.  Isolated vertices belong to no block."""
    disc = [-1] * g.n
    low = [0] * g.n
    blocks = []
    timer = 0
    for root in range(g.n):
        if disc[root] != -1 or not g.adjacency[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(sorted(g.adjacency[root])))]
        estack: list[tuple[int, int]] = []
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for x in it:
                if disc[x] == -1:
                    disc[x] = low[x] = timer
                    timer += 1
                    estack.append((u, x))
                    stack.append((x, u, iter(sorted(g.adjacency[x]))))
                    advanced = True
                    break
                if x != parent and disc[x] < disc[u]:
                    estack.append((u, x))
                    low[u] = min(low[u], disc[x])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                comp = set()
                while True:
                    a, b = estack.pop()
                    comp.update((a, b))
                    if (a, b) == (parent, u):
                        break
                blocks.append(tuple(sorted(comp)))
    blocks.sort()
    count = [0] * g.n
    for blk in blocks:
        for v in blk:
            count[v] += 1
    cuts = frozenset(v for v in range(g.n) if count[v] >= 2)
    return BlockDecomposition(tuple(blocks), cuts)


def is_block_graph(g: Graph) -> bool:
    """Every block is a clique."""
    for blk in block_decomposition(g).blocks:
        k = len(blk)
        inner = sum(1 for a in blk for b in blk if a < b and g.has_edge(a, b))
        if inner != k * (k - 1) // 2:
            return False
    return True


def minimal_block_graph(g: Graph) -> tuple[Graph, BlowupSpec]:
    """Collapse all non-cut vertices of each block onto the lowest-labeled
    one.

    Returns the minimal block graph (survivors relabeled in ascending order)
    and a :class:`BlowupSpec` whose ``vertex_map`` sends every vertex of ``g``
    to its survivor, so that ``spec.graph == g``.
    """
    if g.n == 0 or not is_connected(g):
        raise GraphError("minimal_block_graph needs a connected nonempty graph")
    if not is_block_graph(g):
        raise GraphError("graph is not a block graph (some block is not a clique)")
    dec = block_decomposition(g)
    survivor = list(range(g.n))
    for blk in dec.blocks:
        free = [v for v in blk if v not in dec.cut_vertices]
        for v in free[1:]:
            survivor[v] = free[0]
    keep = sorted(set(survivor))
    label = {v: k for k, v in enumerate(keep)}
    base, _ = g.induced(keep)
    vmap = tuple(label[survivor[v]] for v in range(g.n))
    mult = [0] * len(keep)
    for b in vmap:
        mult[b] += 1
    return base, BlowupSpec(base, tuple(mult), vmap)


class Star(tuple):
    """``(center, leaves)``; a ``K_2`` uses its lower label as center."""

    __slots__ = ()

    def __new__(cls, center: int, leaves: Iterable[int]):
        return super().__new__(cls, (int(center), tuple(sorted(leaves))))

    @property
    def center(self) -> int:
        return self[0]

    @property
    def leaves(self) -> tuple:
        return self[1]

    @property
    def vertices(self) -> list[int]:
        return sorted((self.center, *self.leaves))

    def __repr__(self) -> str:
        return f"Star(center={self.center}, leaves={self.leaves})"


def spanning_star_forest(g: Graph) -> list[Star]:
    """Vertex-disjoint stars of order >= 2 covering every vertex, using only
    edges of ``g``.

    Vertices are inserted in breadth-first order from vertex 0, so each
    prefix induces a connected graph and the newest vertex is always a
    non-cut vertex of the prefix.  A new vertex ``v`` joins its
    smallest-labeled earlier neighbor ``w``: either ``w``'s star absorbs it,
    or ``w`` leaves its star and pairs with ``v``.
    """
    if g.n < 2:
        raise GraphError("spanning_star_forest needs at least two vertices")
    if not is_connected(g):
        raise GraphError("spanning_star_forest needs a connected graph")
    order = [0]
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for x in sorted(g.adjacency[u]):
            if x not in seen:
                seen.add(x)
                order.append(x)
                queue.append(x)

    # star id -> [center, set(leaves)]; vertex -> star id
    stars: dict[int, list] = {0: [min(order[:2]), {max(order[:2])}]}
    member = {order[0]: 0, order[1]: 0}
    next_id = 1
    for v in order[2:]:
        w = min(x for x in g.adjacency[v] if x in member)
        sid = member[w]
        center, leaves = stars[sid]
        if w == center:
            leaves.add(v)
            member[v] = sid
        elif len(leaves) == 1:
            # K_2: w becomes the center
            stars[sid] = [w, {center, v}]
            member[v] = sid
        else:
            leaves.discard(w)
            stars[next_id] = [w, {v}]
            member[w] = member[v] = next_id
            next_id += 1
    out = []
    for center, leaves in stars.values():
        if len(leaves) == 1:
            (leaf,) = leaves
            center, leaves = min(center, leaf), {max(center, leaf)}
        out.append(Star(center, leaves))
    out.sort(key=lambda s: s.vertices[0])
    return out


def closed_twin_reduction(g: Graph) -> BlowupSpec:
    """Group vertices with identical closed neighborhoods.

    The base graph has one vertex per twin class (ordered by smallest
    member); ``g`` is the blowup of the base along the returned spec.
    """
    classes: dict[frozenset, list[int]] = {}
    for v in range(g.n):
        key = g.adjacency[v] | {v}
        classes.setdefault(key, []).append(v)
    groups = sorted(classes.values(), key=lambda c: c[0])
    label = {}
    for k, grp in enumerate(groups):
        for v in grp:
            label[v] = k
    rep = [grp[0] for grp in groups]
    base = Graph(len(groups), [(a, b) for a in range(len(rep)) for b in range(a + 1, len(rep))
                               if g.has_edge(rep[a], rep[b])])
    return BlowupSpec(base, tuple(len(c) for c in groups), tuple(label[v] for v in range(g.n)))
