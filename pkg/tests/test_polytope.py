import itertools
from math import comb

import pytest

from polytverberg.polytope import (
    Polytope,
    all_proper_faces,
    faces_of_dim,
    facets_bruteforce,
    gale_evenness_facets,
    is_k_neighborly,
    is_triangle_free,
    make_cross,
    make_cube,
    make_cyclic,
    make_simplex,
    min_degree,
    skeleton,
)


def gale_all_pairs(n, m):
    """Literal evenness test over every pair outside S, not only consecutive ones."""
    out = []
    for S in itertools.combinations(range(n), m):
        outside = [i for i in range(n) if i not in S]
        if all(sum(1 for s in S if a < s < b) % 2 == 0 for a, b in itertools.combinations(outside, 2)):
            out.append(S)
    return out


def f_vector(P):
    out = [0] * P.dim
    for f in all_proper_faces(P):
        out[f.dim] += 1
    return out


def test_simplex_faces():
    for m in range(1, 6):
        P = make_simplex(m)
        P.validate()
        assert f_vector(P) == [comb(m + 1, k + 1) for k in range(m)]


def test_cross_faces():
    for m in range(1, 6):
        P = make_cross(m)
        P.validate()
        assert f_vector(P) == [comb(m, k + 1) * 2 ** (k + 1) for k in range(m)]
        for F in P.face_sets:
            assert all(i ^ 1 not in F for i in F)


def test_cube_faces():
    for m in range(1, 5):
        P = make_cube(m)
        P.validate()
        assert f_vector(P) == [comb(m, k) * 2 ** (m - k) for k in range(m)]


def test_cyclic_4_7():
    P = make_cyclic(4, 7)
    P.validate()
    assert len(P.facets) == 14
    assert len(faces_of_dim(P, 1)) == 21
    assert is_k_neighborly(P, 2)


@pytest.mark.parametrize("n,m", [(n, m) for n in range(3, 11) for m in range(2, 7) if n > m])
def test_gale_matches_all_pairs_oracle(n, m):
    assert gale_evenness_facets(n, m) == gale_all_pairs(n, m)


def test_gale_matches_bruteforce():
    for n in range(3, 10):
        for m in range(2, 6):
            if n > m:
                P = make_cyclic(m, n)
                assert set(facets_bruteforce(P.vertices)) == set(gale_evenness_facets(n, m))


def test_cyclic_nonuniform_parameters():
    ts = [-3, -1, 0, 2, 5, 6, 9]
    P = make_cyclic(3, 7, ts)
    assert set(facets_bruteforce(P.vertices)) == set(P.facets)


def test_cyclic_rejects_bad_parameters():
    with pytest.raises(ValueError):
        make_cyclic(3, 3)
    with pytest.raises(ValueError):
        make_cyclic(2, 4, [1, 1, 2, 3])


def test_cyclic_neighborliness():
    assert is_k_neighborly(make_cyclic(6, 10), 3)
    assert not is_k_neighborly(make_cube(4), 2)


def test_neighborly_warns_out_of_range():
    with pytest.warns(UserWarning):
        is_k_neighborly(make_simplex(3), 3)


def test_face_lattice_closed_under_intersection():
    for P in (make_cube(3), make_cross(3), make_cyclic(4, 7)):
        faces = P.face_sets
        for F, G in itertools.combinations(faces, 2):
            H = F & G
            assert not H or H in faces


def test_minimal_face():
    P = make_cube(3)
    assert P.minimal_face({0, 3}) == frozenset({0, 1, 2, 3})
    assert P.minimal_face({0, 7}) == frozenset(range(8))
    assert P.minimal_face({5}) == frozenset({5})


def test_from_vertices_drops_interior_point():
    P = Polytope.from_vertices([(0, 0), (2, 0), (0, 2), (2, 2)])
    assert len(P.facets) == 4
    with pytest.raises(ValueError):
        Polytope.from_vertices([(0, 0), (1, 1), (2, 2)])


def test_validate_rejects_non_extreme_vertex():
    P = Polytope(((0, 0), (2, 0), (0, 2), (1, 0)), ((0, 1, 3), (0, 2), (1, 2)), 2)
    with pytest.raises(ValueError):
        P.validate()


def test_faces_of_dim_range():
    with pytest.raises(ValueError):
        faces_of_dim(make_simplex(2), 2)


def test_skeletons():
    G = skeleton(make_cube(3))
    assert len(G.edges) == 12 and min_degree(G) == 3 and is_triangle_free(G)
    assert not is_triangle_free(skeleton(make_simplex(3)))
    assert not is_triangle_free(skeleton(make_cross(3)))
    assert min_degree(skeleton(make_cross(4))) == 6


def test_segment_skeleton_is_its_own_edge():
    G = skeleton(make_simplex(1))
    assert G.edges == ((0, 1),) and min_degree(G) == 1
