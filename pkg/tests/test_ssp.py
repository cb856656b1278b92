import numpy as np
import pytest
from hypothesis import given, strategies as st

from blockiep.graphs import Graph, complement, complete, path, star
from blockiep.linalg import adjacency_matrix
from blockiep.ssp import build_operator, has_ssp, verify_witness


def kron_kernel_dim(a, h):
    """Independent route: vec([A, X]) = (I (x) A - A (x) I) vec(X) restricted
    to symmetric X supported on the non-edges of ``h``."""
    n = a.shape[0]
    pairs = complement(h).sorted_edges()
    if not pairs:
        return 0
    L = np.kron(np.eye(n), a) - np.kron(a.T, np.eye(n))
    cols = []
    for i, j in pairs:
        e = np.zeros((n, n))
        e[i, j] = e[j, i] = 1.0
        cols.append(L @ e.reshape(-1, order="F"))
    M = np.column_stack(cols)
    scale = max(np.linalg.norm(M, 2), np.linalg.norm(a, 2))
    return len(pairs) - np.linalg.matrix_rank(M, tol=1e-9 * scale)


def tridiagonal(rng, n):
    d = rng.normal(size=n)
    e = rng.uniform(0.5, 2.0, size=n - 1) * rng.choice([-1, 1], size=n - 1)
    return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)


class TestStarExample:
    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_star_not_ssp(self, n):
        g = star(n + 1)
        a = adjacency_matrix(g)
        v = has_ssp(a, g)
        assert not v.has_ssp
        assert v.witness is not None and verify_witness(a, g, v.witness)

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_star_ssp_wrt_supergraph(self, n):
        path_edges = {(i, i + 1) for i in range(1, n)}
        h = Graph(n + 1, [e for e in complete(n + 1).edges if e not in path_edges])
        assert has_ssp(adjacency_matrix(star(n + 1)), h).has_ssp

    def test_explicit_obstruction(self):
        n = 5
        a = adjacency_matrix(star(n + 1))
        x = np.zeros((n + 1, n + 1))
        x0 = np.array([[1.0, -1.0], [-1.0, 1.0]])
        x[np.ix_([1, 2], [4, 5])] = x0
        x[np.ix_([4, 5], [1, 2])] = x0
        assert verify_witness(a, star(n + 1), x)


class TestOracle:
    @given(st.integers(0, 10_000), st.integers(2, 6), st.data())
    def test_kernel_matches_kron(self, seed, n, data):
        rng = np.random.default_rng(seed)
        m = rng.normal(size=(n, n))
        a = m + m.T
        if data.draw(st.booleans()):
            # repeated eigenvalues make kernels more likely
            w, v = np.linalg.eigh(a)
            w[: n // 2 + 1] = w[0]
            a = (v * w) @ v.T
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        edges = data.draw(st.lists(st.sampled_from(pairs), unique=True))
        h = Graph(n, edges)
        assert has_ssp(a, h).kernel_dim == kron_kernel_dim(a, h)

    def test_operator_columns(self):
        a = np.array([[1.0, 2.0, 0.0], [2.0, 3.0, 4.0], [0.0, 4.0, 5.0]])
        op = build_operator(a, path(3))
        assert op.free_pairs == ((0, 2),)
        x = np.zeros((3, 3))
        x[0, 2] = x[2, 0] = 1.0
        c = a @ x - x @ a
        assert np.allclose(op.matrix[:, 0], c[np.triu_indices(3, 1)])


class TestVerdicts:
    def test_complete_graph_vacuous(self):
        v = has_ssp(np.diag([1.0, 2.0, 3.0]), complete(3))
        assert v.has_ssp and v.kernel_dim == 0 and np.isinf(v.margin)
        assert v.to_dict()["margin"] is None

    def test_distinct_diagonal_has_ssp_for_empty_pattern(self):
        assert has_ssp(np.diag([0.0, 2.0]), Graph(2, [])).has_ssp

    def test_repeated_diagonal_fails(self):
        v = has_ssp(np.eye(2), Graph(2, []))
        assert not v.has_ssp and v.kernel_dim == 1
        d = v.to_dict()
        assert d["witness"]["n"] == 2

    def test_tridiagonal_paths_have_ssp(self):
        rng = np.random.default_rng(7)
        for n in range(2, 8):
            assert has_ssp(tridiagonal(rng, n), path(n)).has_ssp

    def test_supergraph_monotone(self):
        rng = np.random.default_rng(11)
        a = tridiagonal(rng, 5)
        assert has_ssp(a, path(5)).has_ssp
        assert has_ssp(a, path(5).add_edges([(0, 4)])).has_ssp

    def test_verify_rejects_bad_witness(self):
        a = adjacency_matrix(star(4))
        x = np.eye(4)
        assert not verify_witness(a, star(4), x)
        y = np.zeros((4, 4))
        y[0, 1] = y[1, 0] = 1.0
        assert not verify_witness(a, star(4), y)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            has_ssp(np.eye(3), path(4))
