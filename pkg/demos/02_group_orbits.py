"""
The symmetry group of the pencil and its orbits
===============================================

Two coordinate maps generate a group of order 24 acting on every member.
"""

from weierquartic import generate, orbits, pencil, pencil_generators, weierstrass_points

G = generate(pencil_generators())
print("order:", G.order)
print("class sizes:", G.class_sizes())
print("element orders by class:", [G.orders[c[0]] for c in G.classes])

# Weierstrass points of a member with complex parameter
F = pencil(0.5 + 0.5j)
pts = [p for p, _ in weierstrass_points(F)]
part = orbits(G, pts)
print("orbit sizes:", part.sizes)
print("stabilizer orders:", sorted(set(part.stabilizer_orders)))

# the three coordinate points form a single orbit with stabilizers of order 8
print(orbits(G, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]).stabilizer_orders)
