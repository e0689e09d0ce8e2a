"""
Members with double flexes
==========================

At t = 0 and t = 3 the 24 simple flexes merge in pairs into 12 points of weight 2.
"""

import numpy as np

from weierquartic import generate, hessian_det, pencil, pencil_generators, transitivity_report
from weierquartic.acceptance import c3_closed_form, c3_orbit_of_i
from weierquartic.projgeom import chordal

G = generate(pencil_generators())

for t in (0, 3):
    r = transitivity_report(pencil(t), G, f"t={t}")
    print(r.curve_id, r.weight_histogram, "orbits", r.orbit_sizes, "gaps", r.points[0].gap_sequence)

# at t = 3 the points are the permutations of [1 : +-1 : +-i]
r = transitivity_report(pencil(3), G)
ref = c3_orbit_of_i()
print("distance to [1:+-1:+-i] set: %.1e" % max(min(chordal(d.point.coords, q) for q in ref) for d in r.points))

# the points [0 : 1 : z] with z^2 = (-3 +- sqrt 5) / 2 lie on the curve
# but the Hessian does not vanish there, so they are ordinary points
F = pencil(3)
H = hessian_det(F)
for p in c3_closed_form()[:2]:
    v = np.asarray(p)
    print("F residual %.1e, Hessian residual %.2f" % (F.residual(v), H.residual(v)))
