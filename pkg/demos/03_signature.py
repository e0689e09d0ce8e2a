"""
Branch data of the group action
===============================

Collect the points with nontrivial stabilizer and read off the signature.
"""

import numpy as np

from weierquartic import ProjMap, generate, pencil, pencil_generators, signature
from weierquartic.weierstrass import branch_orbits, riemann_hurwitz_genus

G = generate(pencil_generators())
F = pencil(-3)

pts, part = branch_orbits(G, F)
print(len(pts), "points with nontrivial stabilizer")
print("orbit sizes:", part.sizes)
print("signature:", signature(G, F))

# Riemann-Hurwitz: 2*3 - 2 = 24 * (2h - 2 + 3/2 + 2/3)
print("quotient genus:", riemann_hurwitz_genus(3, 24, (2, 2, 2, 3)))

# a single sign change fixes the line y = 0 and the point [0:1:0]
flip = generate([ProjMap(np.diag([1, -1, 1]))])
print("order 2 subgroup:", signature(flip, F))
