"""
Two constructive cases
======================

Neighborly polytopes: every d+1 vertices of the cyclic polytope C(4, 7)
span a face, so a plain Tverberg partition of the vertex images can be
shrunk to faces.

Triangle-free skeletons: for maps to the line, sorting the vertices and
matching each of the first r-1 to a later neighbour gives the faces
directly.
"""

import random
from fractions import Fraction

import polytverberg as pt

P = pt.make_cyclic(4, 7)
print("facets:", len(P.facets), "2-neighborly:", pt.is_k_neighborly(P, 2))

f = pt.seeded_rational_map(1, 4, seed=1, vertices=P.vertices).map
w = pt.neighborly_construct(P, f, 3)
print("faces:", w.faces, "common value:", str(w.z[0]))
pt.validate_witness(w, f.images(P), polytope=P)

# the 4-cube has a triangle-free skeleton with minimum degree 4
G = pt.skeleton(pt.make_cube(4))
print("min degree:", pt.min_degree(G), "triangle-free:", pt.is_triangle_free(G))

rng = random.Random(0)
values = [Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(G.n)]
w = pt.triangle_free_d1(G, values, 4)
for a, b in w.edges:
    print(f"edge {a}-{b}: [{min(values[a], values[b])}, {max(values[a], values[b])}]")
print("vertex", w.final_vertex, "value", w.value)
