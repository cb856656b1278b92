"""
Block graphs end to end
=======================

For a block graph the solver reduces to the minimal block graph, looks for
a refinement of its block sizes covered by the target multiplicity list,
builds a matrix on a clique chain, perturbs it onto the minimal graph and
finally blows the result back up.
"""

import json

from blockiep.blocksolver import feasible_multiplicity, realize
from blockiep.graphs import clique_path, corona_complete

g = corona_complete(3)
sigma = [1, 2, 3, 4, 5, 5]
w = feasible_multiplicity(g, [2, 1, 1, 1, 1])
print("witness:", w.to_dict())

a, cert = realize(g, sigma, seed=0)
print("route:", cert.route, " deviation: %.2e" % cert.spectral_deviation,
      " minimal-stage SSP:", cert.ssp["has_ssp"])
for stage in cert.stages:
    print("  ", json.dumps(stage))

# an uncovered list is reported as not certified, which is not a proof of infeasibility
print("\nKP(2,3,3,2) with {3,1,1,1,1}:", feasible_multiplicity(clique_path(2, 3, 3, 2),
                                                             [3, 1, 1, 1, 1]))
