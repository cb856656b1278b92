"""
Lollipops, barbells and clique paths
====================================

These families are blowups of paths, so they need at least as many distinct
eigenvalues as the path they contain.  Below that count the solver refuses
with InfeasibleError; at or above it, the blowup route realizes the spectrum.
"""

from blockiep.blocksolver import feasibility_check_clique_path, realize_barbell, realize_lollipop
from blockiep.errors import InfeasibleError

_, cert = realize_lollipop(6, 3, [1, 2, 3, 4, 5, 5, 5, 5, 5], seed=0)
print("L_6,3 with 5 distinct values: deviation %.2e" % cert.spectral_deviation)
try:
    realize_lollipop(6, 3, [1, 2, 3, 4, 4, 4, 4, 4, 4])
except InfeasibleError as exc:
    print("L_6,3 with 4 distinct values:", exc)

for d in range(1, 7):
    sigma = list(range(d)) + [0] * (6 - d)
    try:
        realize_barbell(3, 0, 3, sigma, seed=d)
        print(f"B_3,0,3 with {d} distinct values: realized")
    except InfeasibleError:
        print(f"B_3,0,3 with {d} distinct values: infeasible")

print("\nKP(2,3,2), 4 distinct:", feasibility_check_clique_path([2, 3, 2], [1, 1, 2, 3, 4]))
print("KP(2,2,2,2), 4 distinct:", feasibility_check_clique_path([2, 2, 2, 2], [1, 2, 3, 4, 4]))
print("KP(3,3,3,3), 5 distinct:", feasibility_check_clique_path([3, 3, 3, 3], [1, 2, 3, 4] + [5] * 5))
