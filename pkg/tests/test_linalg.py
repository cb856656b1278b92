import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from blockiep.graphs import complete, empty, path, star
from blockiep.linalg import (DEFAULT_TOL, Spectrum, Tolerances, adjacency_matrix, as_symmetric,
                             commutator, direct_sum, eigh, group_values, hadamard,
                             in_pattern_closed, in_pattern_strict, jacobi_eigh, matrix_from_dict,
                             matrix_from_json, matrix_to_dict, multiset_distance, nullspace,
                             pattern_of, principal_submatrix, spectrum)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def symmetric(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    m = draw(arrays(np.float64, (n, n), elements=finite))
    return (m + m.T) / 2


class TestTolerances:
    def test_defaults(self):
        t = Tolerances()
        assert (t.eig_tol, t.zero_tol, t.group_tol, t.rank_tol) == (1e-10, 1e-8, 1e-6, 1e-9)

    def test_override_and_validation(self):
        assert DEFAULT_TOL.with_(group_tol=1e-4).group_tol == 1e-4
        with pytest.raises(ValueError):
            Tolerances(eig_tol=-1.0)


class TestSymmetric:
    def test_rejects_nonsquare_and_asymmetric(self):
        with pytest.raises(ValueError):
            as_symmetric(np.zeros((2, 3)))
        with pytest.raises(ValueError):
            as_symmetric(np.array([[0.0, 1.0], [0.0, 0.0]]))
        with pytest.raises(ValueError):
            as_symmetric(np.array([[np.nan]]))


class TestEigensolvers:
    @given(symmetric())
    def test_jacobi_matches_lapack(self, a):
        w_j, v_j = jacobi_eigh(a)
        w_l = np.linalg.eigvalsh(a)
        scale = 1 + np.max(np.abs(a))
        assert np.max(np.abs(w_j - w_l)) <= 1e-10 * scale
        assert np.allclose(v_j.T @ v_j, np.eye(a.shape[0]), atol=1e-10)
        assert np.max(np.abs(a @ v_j - v_j * w_j)) <= 1e-9 * scale

    def test_methods_agree(self):
        rng = np.random.default_rng(3)
        m = rng.normal(size=(6, 6))
        a = m + m.T
        w1, _ = eigh(a, "jacobi")
        w2, _ = eigh(a)
        assert np.allclose(w1, w2, atol=1e-12)
        with pytest.raises(ValueError):
            eigh(a, "qr")

    def test_diagonal_input(self):
        w, v = jacobi_eigh(np.diag([3.0, 1.0, 2.0]))
        assert list(w) == [1.0, 2.0, 3.0]


class TestSpectrum:
    def test_grouping(self):
        groups = group_values([1.0, 1.0 + 5e-7, 2.0, 3.0, 3.0], 1e-6)
        assert [m for _, m in groups] == [2, 1, 2]

    def test_spectrum_of_matrix(self):
        s = spectrum(np.diag([1.0, 1.0, 2.0]))
        assert s.distinct == [1.0, 2.0]
        assert s.multiplicities == [2, 1]
        assert s.multiplicity_of(1.0) == 2 and s.multiplicity_of(5.0) == 0
        assert s.contains(2.0) and not s.contains(2.1)
        assert "1^(2)" in repr(s)

    def test_distance(self):
        assert multiset_distance([1, 2, 3], [3, 2, 1.5]) == 0.5
        assert multiset_distance(Spectrum.from_values([0, 1]), [1, 0]) == 0.0
        with pytest.raises(ValueError):
            multiset_distance([1], [1, 2])


class TestPatterns:
    def test_pattern_of(self):
        a = np.array([[1.0, 1e-9, 2.0], [1e-9, 0.0, 0.0], [2.0, 0.0, 5.0]])
        assert pattern_of(a).sorted_edges() == [(0, 2)]

    def test_strict_vs_closed(self):
        a = adjacency_matrix(path(3))
        assert in_pattern_strict(a, path(3))
        assert in_pattern_closed(a, complete(3))
        assert not in_pattern_strict(a, complete(3))
        assert not in_pattern_closed(a, empty(3))
        with pytest.raises(ValueError):
            in_pattern_strict(a, path(4))

    @given(symmetric())
    def test_pattern_roundtrip(self, a):
        g = pattern_of(a)
        assert in_pattern_strict(a, g)


class TestStructure:
    def test_nullspace(self):
        rank, basis, sv = nullspace(np.array([[1.0, 1.0], [2.0, 2.0]]))
        assert rank == 1
        assert basis.shape == (2, 1)
        assert np.allclose(np.array([[1.0, 1.0]]) @ basis, 0)
        assert sv.shape == (2,)

    def test_nullspace_wide(self):
        rank, basis, _ = nullspace(np.ones((1, 3)))
        assert rank == 1 and basis.shape == (3, 2)

    def test_commutator_and_hadamard(self):
        a = np.diag([1.0, 2.0])
        x = np.array([[0.0, 1.0], [1.0, 0.0]])
        assert np.allclose(commutator(a, x), [[0, -1], [1, 0]])
        assert np.allclose(hadamard(a, np.eye(2)), a)

    def test_direct_sum_and_submatrix(self):
        d = direct_sum(np.array([[1.0]]), np.array([[2.0, 3.0], [3.0, 4.0]]))
        assert d.shape == (3, 3) and d[1, 2] == 3.0 and d[0, 1] == 0.0
        assert np.array_equal(principal_submatrix(d, 0), d[1:, 1:])
        assert np.array_equal(principal_submatrix(d, [0, 2]), [[2.0]])

    def test_matrix_json(self):
        a = adjacency_matrix(star(3))
        assert np.array_equal(matrix_from_dict(matrix_to_dict(a)), a)
        with pytest.raises(ValueError):
            matrix_from_json('{"n": 2, "rows": [[1]]}')
