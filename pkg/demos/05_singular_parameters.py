"""
Where the pencil degenerates
============================

Scan a grid of parameters and report the singular members.
"""

import numpy as np

from weierquartic import classify_parameter, is_smooth, pencil

grid = [complex(a, b) for b in np.linspace(-3, 3, 13) for a in np.linspace(-3, 3, 13)]
grid += [-1, 2, -2]
bad = sorted({t for t in grid if classify_parameter(t).verdict == "singular"}, key=lambda z: z.real)
print("singular members:", bad)

# witnesses: t = 2 meets x^2 + y^2 = 0 doubly, t = -1 and t = -2 are reducible
for t in (2, -1, -2):
    print(t, is_smooth(pencil(t)).witness)

# the gradient size shrinks linearly as t approaches 2
for h in (1e-1, 1e-2, 1e-3):
    print("t = 2 + %g: %.2e" % (h, classify_parameter(2 + h).distance))
