"""
Direct constructions
====================

Closed-form and randomized building blocks: arrow matrices with prescribed
interlacing data, complete-graph matrices with two eigenvalues, and vertex
duplication, which grows a matrix by a clique while adding chosen eigenvalues.
"""

import numpy as np

from blockiep.constructors import (arrow_realize, complete_with_eigvec, duplicate_vertex,
                                   two_eig_complete)
from blockiep.linalg import eigvalsh, principal_submatrix

np.set_printoptions(precision=4, suppress=True)

# arrow matrix: spectrum {0, 1, 3}, leaf diagonal {0.5, 2}
a = arrow_realize([0.0, 1.0, 3.0], [0.5, 2.0])
print("arrow matrix\n", a)
print("eigenvalues", eigvalsh(a))

# K_5 matrix with spectrum {-1^(2), 2^(3)}; no vertex-deleted spectrum may touch 4.0
c = two_eig_complete(-1.0, 2.0, 2, 3, forbid_submatrix=[4.0], seed=1)
print("\ntwo-eigenvalue K_5 matrix\n", c)
print("eigenvalues", eigvalsh(c))
print("smallest gap from 4 over A(v):",
      min(np.min(np.abs(eigvalsh(principal_submatrix(c, v)) - 4.0)) for v in range(5)))

# duplicate vertex 1 of the arrow matrix into a triangle, adding eigenvalues 5 and 7
b, u = complete_with_eigvec([a[1, 1], 5.0, 7.0], a[1, 1], seed=2)
d = duplicate_vertex(a, 1, b, u)
print("\nafter duplicating vertex 1:", d.shape, "eigenvalues", eigvalsh(d))
