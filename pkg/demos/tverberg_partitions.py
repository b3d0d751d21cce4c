"""
Tverberg partitions of seven points in the plane
=================================================

Seven points in the plane can always be split into three groups whose
convex hulls share a point. We find such a split exactly and check it.
"""

from fractions import Fraction

import polytverberg as pt

# a symmetric configuration first: a hexagon around its center
pts = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1), (0, 0)]
w = pt.tverberg_partition(pts, 3)
print("parts:", w.faces)
print("common point:", [str(x) for x in w.z])

# every witness carries exact convex weights, so it can be re-checked
pt.validate_witness(w, pts)

# now a random rational configuration in general position
pts = pt.random_rational_points(7, 2, seed=12)
w = pt.tverberg_partition(pts, 3)
for part, cs in zip(w.faces, w.coeffs):
    print(part, [str(c) for c in cs])
print("z =", [str(x) for x in w.z])

# the same point comes out of each part's weights
for part, cs in zip(w.faces, w.coeffs):
    z = tuple(sum((c * Fraction(pts[i][k]) for i, c in zip(part, cs)), Fraction(0)) for k in range(2))
    assert z == w.z
