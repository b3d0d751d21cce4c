import math

import numpy as np
import pytest

from polytverberg.complex import (
    BoundaryComplex,
    barycentric_subdivide,
    boundary_complex,
    face_diameter,
    subdivide_k,
    subdivision_decay_report,
)
from polytverberg.polytope import Polytope, make_cross, make_cube, make_cyclic, make_simplex

REGULAR_TETRA = Polytope.from_vertices([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])


def test_simplex_boundary_kept_as_is():
    C = boundary_complex(make_simplex(3))
    assert C.simplices.shape == (4, 3) and len(C.points) == 4
    C.validate()


def test_cube_boundary_is_a_sphere():
    C = boundary_complex(make_cube(3))
    C.validate()
    assert C.euler_characteristic() == 2
    assert len(C.simplices) == 6 * 4  # each square coned from its center


@pytest.mark.parametrize("P", [make_cube(4), make_cross(4), make_cyclic(4, 7)], ids=str)
def test_four_dim_boundaries_are_three_spheres(P):
    C = boundary_complex(P)
    C.validate()
    assert C.euler_characteristic() == 0


def test_boundary_rejects_lower_dimensional():
    P = Polytope(((0, 0, 0), (1, 0, 0), (0, 1, 0)), ((0, 1), (0, 2), (1, 2)), 3)
    with pytest.raises(ValueError):
        boundary_complex(P)


def test_one_triangle_subdivides_into_six():
    pts = np.eye(3)
    C = barycentric_subdivide(BoundaryComplex(pts, np.array([[0, 1, 2]])))
    assert len(C.simplices) == 6 and len(C.points) == 7


def test_tetrahedron_subdivision_counts():
    C = subdivide_k(make_simplex(3), 1)
    assert len(C.simplices) == 24
    assert len(C.points) == 4 + 6 + 4
    C.validate()
    assert C.euler_characteristic() == 2


def test_subdivision_counts_grow_by_m_factorial():
    C = boundary_complex(make_cube(3))
    for _ in range(3):
        D = barycentric_subdivide(C)
        assert len(D.simplices) == 6 * len(C.simplices)
        D.validate()
        C = D


def test_regular_tetrahedron_diameter():
    C = boundary_complex(REGULAR_TETRA)
    assert face_diameter(C) == pytest.approx(math.acos(-1 / 3), abs=1e-12)


def test_diameter_realized_by_vertex_pair():
    eps = 1e-3
    a = np.array([1.0, 0.0, 0.0])
    b = np.array([math.cos(math.pi - eps), math.sin(math.pi - eps), 0.0])
    c = np.array([0.0, 0.0, 1.0])
    C = BoundaryComplex(np.stack([a, b, c]), np.array([[0, 1, 2]]))
    assert face_diameter(C) == pytest.approx(math.pi - eps, abs=1e-9)


def test_face_diameter_rejects_non_unit():
    with pytest.raises(ValueError):
        face_diameter(BoundaryComplex(2 * np.eye(3), np.array([[0, 1, 2]])))


@pytest.mark.parametrize("P,k_max", [(make_simplex(3), 3), (make_cube(3), 2)], ids=str)
def test_decay_ratios_below_one(P, k_max):
    rows = subdivision_decay_report(P, k_max)
    assert rows[0].diameter == pytest.approx(face_diameter(boundary_complex(P)))
    assert math.isnan(rows[0].ratio)
    for row in rows[1:]:
        assert row.ratio < 1 and not row.flagged


def test_decay_report_needs_a_step():
    with pytest.raises(ValueError):
        subdivision_decay_report(make_simplex(2), 0)
