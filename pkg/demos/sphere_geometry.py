"""
Subdivisions, packings and equal-value orbits
=============================================

Floating-point experiments on the sphere: face diameters under repeated
barycentric subdivision, Voronoi cells of a greedy packing, and a search
for p points on a great circle with equal images.
"""

import math

import numpy as np

import polytverberg as pt

# face diameters shrink with every subdivision
for row in pt.subdivision_decay_report(pt.make_cube(3), 3):
    print(f"k={row.k} diameter={row.diameter:.4f} ratio={row.ratio:.3f}")

# a greedy packing with separation pi/12 and its Voronoi cells
X = pt.greedy_lambda_packing(3, math.pi / 12, seed=1, pool_size=20000)
chk = pt.voronoi_diameter_check(X, seed=1)
print(len(X.points), "points; largest cell", round(chk.max_cell_diameter, 4),
      "vs 2*lambda", round(chk.bound, 4))

# three points 120 degrees apart on a great circle of S^3 with equal value
f = pt.random_smooth_map(4, 1, seed=1)
res = pt.solve_bu(f, m=3, d=1, p=3, seed=1)
print("residual", res.residual, "after restart", res.restart)
print("values", np.round(res.values.ravel(), 10))
print("min distance", res.min_pairwise_distance(), "target", 2 * math.pi / 3)
