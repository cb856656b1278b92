"""
Isospectral continuation
========================

A matrix with the SSP can be nudged onto a denser pattern without changing
its spectrum.  The new entries are pinned to a small value and alternating
projections find the nearby cospectral matrix.
"""

import numpy as np

from blockiep.constructors import arrow_realize, two_eig_complete
from blockiep.continuation import (ContinuationProblem, append_cliques_chain, solve,
                                   ssp_supergraph_perturb)
from blockiep.graphs import complete, disjoint_union, path
from blockiep.linalg import direct_sum, eigvalsh, pattern_of
from blockiep.ssp import has_ssp

np.set_printoptions(precision=4, suppress=True)

# diag(0, 2) onto K_2 with the off-diagonal pinned to 0.05
res = solve(ContinuationProblem(np.diag([0.0, 2.0]), [0.0, 2.0], complete(2), {(0, 1): 0.05}))
print("converged", res.converged, "in", res.iterations, "iterations\n", res.matrix)

# two disjoint edges joined into a path; spectra {0, 2} and {3, 5} are kept
a = direct_sum(arrow_realize([0.0, 2.0], [1.0]), arrow_realize([3.0, 5.0], [4.0]))
h = disjoint_union(path(2), path(2))
hp = h.add_edges([(0, 2)])
out = ssp_supergraph_perturb(a, h, hp)
print("\njoined pattern:", sorted(pattern_of(out).edges), "eigenvalues", eigvalsh(out))

# clique-path KP(3, 3): a triangle with spectrum {0, 1^2}, then a triangle for 2^2
t = two_eig_complete(0.0, 1.0, 1, 2, forbid_submatrix=[2.0], seed=3)
kp, g = append_cliques_chain(t, complete(3), [(2, 2.0, 2)])
print("\nKP(3,3) edges:", sorted(g.edges))
print("eigenvalues", eigvalsh(kp), " SSP:", has_ssp(kp, g).has_ssp)
