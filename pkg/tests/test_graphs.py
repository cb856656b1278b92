import json

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from blockiep.graphs import (BlowupSpec, Graph, GraphError, barbell, block_decomposition, blowup,
                             clique_path, clique_star, closed_twin_reduction, complement, complete,
                             corona_complete, disjoint_union, empty, is_block_graph, is_connected,
                             is_subgraph, lollipop, minimal_block_graph, parse_graph_text, path,
                             spanning_star_forest, star, vertex_sum)


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


@st.composite
def graphs(draw, max_n=9, connected=False):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if connected:
        edges = set(edges) | {(i - 1, i) for i in range(1, n)}
    return Graph(n, list(edges))


@st.composite
def block_graphs(draw, max_blocks=5):
    g = complete(draw(st.integers(2, 4)))
    for _ in range(draw(st.integers(1, max_blocks - 1))):
        v = draw(st.integers(0, g.n - 1))
        g = vertex_sum(g, v, complete(draw(st.integers(2, 4))), 0)
    return g


class TestGraphBasics:
    def test_edges_normalized(self):
        g = Graph(3, [(2, 0), (1, 2)])
        assert g.sorted_edges() == [(0, 2), (1, 2)]
        assert g.has_edge(2, 0) and not g.has_edge(0, 1)

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 1)]])
    def test_invalid_edges(self, edges):
        with pytest.raises(GraphError):
            Graph(3, edges)

    def test_degrees_and_neighbors(self):
        g = star(5)
        assert g.degrees() == [4, 1, 1, 1, 1]
        assert g.neighbors(0) == frozenset({1, 2, 3, 4})

    def test_json_roundtrip(self):
        g = lollipop(4, 2)
        assert Graph.from_json(g.to_json()) == g
        assert json.loads(g.to_json())["n"] == 6

    def test_text_roundtrip(self):
        g = clique_path(2, 3, 2)
        assert parse_graph_text(g.to_text()) == g

    @pytest.mark.parametrize("text", ["x; 0-1", "3; 0+1", "3; a-b"])
    def test_text_malformed(self, text):
        with pytest.raises(GraphError):
            parse_graph_text(text)

    def test_from_dict_rejects_bad_fields(self):
        with pytest.raises(GraphError):
            Graph.from_dict({"edges": []})
        with pytest.raises(GraphError):
            Graph.from_dict({"n": 2, "edges": [[0, 1, 2]]})

    def test_induced_and_remove(self):
        g = path(4)
        sub, keep = g.remove_vertex(1)
        assert keep == [0, 2, 3]
        assert sub.sorted_edges() == [(1, 2)]

    def test_relabel(self):
        g = path(3).relabel([2, 1, 0])
        assert g.sorted_edges() == [(0, 1), (1, 2)]
        with pytest.raises(GraphError):
            path(3).relabel([0, 0, 1])


class TestFamilies:
    def test_sizes(self):
        assert complete(5).num_edges == 10
        assert path(5).num_edges == 4
        assert empty(3).num_edges == 0
        assert lollipop(6, 3).n == 9 and lollipop(6, 3).num_edges == 15 + 3
        assert barbell(6, 2, 3).n == 11 and barbell(6, 2, 3).num_edges == 15 + 3 + 3
        assert corona_complete(3).n == 6 and corona_complete(3).num_edges == 6

    def test_lollipop_is_leaf_blowup_of_path(self):
        assert blowup(path(5), [5, 1, 1, 1, 1]).graph == lollipop(6, 3)

    def test_barbell_is_blowup_of_path(self):
        assert blowup(path(6), [5, 1, 1, 1, 1, 2]).graph == barbell(6, 2, 3)
        assert blowup(path(4), [2, 1, 1, 2]).graph == barbell(3, 0, 3)

    def test_clique_path_matches_vertex_sums(self):
        g = complete(2)
        g = vertex_sum(g, 1, complete(3), 0)
        g = vertex_sum(g, 3, complete(2), 0)
        assert g == clique_path(2, 3, 2)

    def test_clique_star(self):
        g = clique_star(3, 2, 2)
        assert g.n == 5 and g.degree(0) == 4
        assert is_block_graph(g)

    def test_barbell_empty_path(self):
        g = barbell(3, 0, 3)
        assert g.n == 6 and g.has_edge(2, 3)


class TestOperations:
    def test_vertex_sum_labels(self):
        g = vertex_sum(path(2), 1, complete(3), 0)
        assert g.sorted_edges() == [(0, 1), (1, 2), (1, 3), (2, 3)]

    def test_disjoint_union(self):
        g = disjoint_union(path(2), path(3))
        assert g.sorted_edges() == [(0, 1), (2, 3), (3, 4)]
        assert not is_connected(g)

    @given(graphs())
    def test_complement_involution(self, g):
        assert complement(complement(g)) == g
        assert g.num_edges + complement(g).num_edges == g.n * (g.n - 1) // 2

    @given(graphs())
    def test_connectivity_matches_networkx(self, g):
        assert is_connected(g) == nx.is_connected(to_nx(g))

    def test_subgraph(self):
        assert is_subgraph(path(4), complete(4))
        assert not is_subgraph(complete(4), path(4))
        assert not is_subgraph(path(3), path(4))


class TestBlowup:
    def test_canonical_labels(self):
        spec = blowup(path(3), [2, 1, 2])
        assert spec.vertex_map == (0, 0, 1, 2, 2)
        assert spec.order == 5
        assert spec.preimage(2) == [3, 4]

    def test_all_ones_is_identity(self):
        g = corona_complete(3)
        assert blowup(g, [1] * g.n).graph == g

    def test_validation(self):
        with pytest.raises(GraphError):
            blowup(path(3), [1, 0, 1])
        with pytest.raises(GraphError):
            BlowupSpec(path(2), (1, 2), (0, 0, 1))

    @given(graphs(max_n=6), st.data())
    def test_twin_reduction_reproduces_graph(self, g, data):
        mults = data.draw(st.lists(st.integers(1, 3), min_size=g.n, max_size=g.n))
        h = blowup(g, mults).graph
        red = closed_twin_reduction(h)
        assert red.graph == h
        assert red.base.n <= g.n

    def test_g150_and_g117_structure(self):
        g150 = blowup(path(4), [2, 1, 2, 1]).graph
        g117 = blowup(star(4), [1, 2, 2, 1]).graph
        assert g150.n == g117.n == 6
        assert g150.num_edges == 8
        assert not is_block_graph(g150)
        assert is_block_graph(g117)
        assert closed_twin_reduction(g150).base == path(4)


class TestBlocks:
    @given(graphs(connected=True))
    def test_blocks_match_networkx(self, g):
        dec = block_decomposition(g)
        ours = {frozenset(b) for b in dec.blocks}
        theirs = {frozenset(c) for c in nx.biconnected_components(to_nx(g))}
        assert ours == theirs
        assert dec.cut_vertices == frozenset(nx.articulation_points(to_nx(g)))

    @given(graphs(max_n=7))
    def test_block_graph_matches_chordal_diamond_free(self, g):
        # block graphs are exactly the graphs whose biconnected parts are cliques
        G = to_nx(g)
        expected = all(G.subgraph(c).number_of_edges() == len(c) * (len(c) - 1) // 2
                       for c in nx.biconnected_components(G))
        assert is_block_graph(g) == expected

    def test_minimal_block_graph_lollipop(self):
        g0, spec = minimal_block_graph(lollipop(6, 3))
        assert g0 == path(5)
        assert spec.graph == lollipop(6, 3)
        assert sorted(spec.multiplicities) == [1, 1, 1, 1, 5]

    def test_minimal_block_graph_clique_star(self):
        g0, spec = minimal_block_graph(clique_star(6, 3, 2, 2))
        assert g0 == star(5)
        assert spec.graph == clique_star(6, 3, 2, 2)

    def test_corona_is_minimal(self):
        g = corona_complete(4)
        g0, spec = minimal_block_graph(g)
        assert g0 == g and spec.multiplicities == (1,) * 8

    @given(block_graphs())
    def test_minimal_block_graph_property(self, g):
        g0, spec = minimal_block_graph(g)
        assert spec.graph == g
        dec = block_decomposition(g0)
        for blk in dec.blocks:
            assert sum(1 for v in blk if v not in dec.cut_vertices) <= 1
        assert len(dec.blocks) == len(block_decomposition(g).blocks)

    def test_single_block_collapses_to_a_vertex(self):
        g0, spec = minimal_block_graph(complete(4))
        assert g0.n == 1 and spec.multiplicities == (4,)

    def test_rejections(self):
        with pytest.raises(GraphError):
            minimal_block_graph(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
        with pytest.raises(GraphError):
            minimal_block_graph(disjoint_union(path(2), path(2)))


class TestStarForest:
    @given(graphs(connected=True).filter(lambda g: g.n >= 2))
    def test_cover(self, g):
        stars = spanning_star_forest(g)
        seen = sorted(v for s in stars for v in s.vertices)
        assert seen == list(range(g.n))
        for s in stars:
            assert len(s.leaves) >= 1
            assert all(g.has_edge(s.center, leaf) for leaf in s.leaves)

    def test_path(self):
        stars = spanning_star_forest(path(4))
        assert [s.vertices for s in stars] == [[0, 1], [2, 3]]

    def test_requires_connected(self):
        with pytest.raises(GraphError):
            spanning_star_forest(disjoint_union(path(2), path(2)))
