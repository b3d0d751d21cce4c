"""
Overlapping faces of cross-polytopes
====================================

Map the octahedron linearly to the line. Even with one vertex forbidden,
some three vertex-disjoint faces have overlapping images. We count every
such triple and compare with the lower bound.
"""

import polytverberg as pt

P = pt.make_cross(3)
sm = pt.seeded_rational_map(1, 3, seed=4, vertices=P.vertices)
f = sm.map
print("vertex images:", [str(v[0]) for v in f.images(P)])

for bad in range(P.n_vertices):
    res = pt.count_cross_witnesses(3, 1, 3, f, bad, keep_witnesses=True)
    print(f"forbid {bad}: {res.count} triples (bound {res.bound}, need {res.threshold})")
    for w in res.witnesses:
        print("   ", w.faces, "meet at", str(w.z[0]))

# the same statement through a rainbow partition of five vertex images
P4 = pt.make_cross(4)
f4 = pt.seeded_rational_map(1, 4, seed=2, vertices=P4.vertices).map
res = pt.cross_via_colorful(4, 1, 3, f4)
print("prime used:", res.p, "faces:", res.witness.faces)
pt.validate_witness(res.witness, f4.images(P4), polytope=P4)
