"""
Flexes of a pencil member
=========================

Intersect a quartic of the pencil with its Hessian and look at what comes out.
"""

import numpy as np

from weierquartic import hessian_det, intersect, pencil
from weierquartic.projgeom import contact_order, tangent_line

# a generic member, t = 1
F = pencil(1)
H = hessian_det(F)
print("Hessian degree:", H.degree)

# 4 * 6 = 24 intersection points, all simple
pts = intersect(F, H)
print(len(pts), "points, multiplicities", sorted({p.multiplicity for p in pts}))

# each flex has contact 3 with its tangent line
P = pts[0].point
print("a flex:", P)
print("contact order:", contact_order(F, tangent_line(F, P), P))

# the worst residual of F and H over all points
print("max residual: %.1e" % max(max(p.residuals) for p in pts))

# coordinates of the first few, rounded
for p in pts[:4]:
    print(np.round(p.point.coords, 6))
