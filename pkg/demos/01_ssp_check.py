"""
Checking the strong spectral property
=====================================

The SSP asks whether the only symmetric X that vanishes on the diagonal and
on the edges of the graph, and commutes with A, is X = 0.  The check reduces
to the kernel of a linear map on the non-edge coordinates.
"""

import numpy as np

from blockiep.graphs import Graph, complete, path, star
from blockiep.linalg import adjacency_matrix
from blockiep.ssp import has_ssp, verify_witness

# a star with five leaves and zero diagonal: eigenvalue 0 has multiplicity 4
g = star(6)
a = adjacency_matrix(g)
verdict = has_ssp(a, g)
print("star K_1,5     has SSP:", verdict.has_ssp, " kernel dimension:", verdict.kernel_dim)
print("witness commutes with A:", verify_witness(a, g, verdict.witness))

# the same matrix relative to a denser pattern that keeps the star's edges
drop = {(i, i + 1) for i in range(1, 5)}
h = Graph(6, [e for e in complete(6).edges if e not in drop])
print("w.r.t. K_6 minus a leaf path, has SSP:", has_ssp(a, h).has_ssp)

# tridiagonal matrices with nonzero off-diagonals always have the SSP
rng = np.random.default_rng(0)
t = np.diag(rng.normal(size=5)) + np.diag(np.ones(4), 1) + np.diag(np.ones(4), -1)
print("random tridiagonal on P_5 has SSP:", has_ssp(t, path(5)).has_ssp)
