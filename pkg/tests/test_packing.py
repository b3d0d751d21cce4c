import math

import numpy as np
import pytest

from polytverberg.packing import (
    PackingSpec,
    geodesic,
    greedy_lambda_packing,
    packing_polytope,
    uniform_sphere,
    voronoi_diameter_check,
)

OCTA = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]], float)


def pairwise(X):
    return geodesic(X[:, None, :], X[None, :, :])[np.triu_indices(len(X), 1)]


def test_packing_is_separated_and_maximal():
    X = greedy_lambda_packing(3, math.pi / 12, seed=42, pool_size=5000)
    assert np.all(pairwise(X.points) > X.lam)
    pool = uniform_sphere(5000, 3, np.random.default_rng(42))
    nearest = geodesic(pool[:, None, :], X.points[None, :, :]).min(axis=1)
    assert np.all(nearest <= X.lam)


def test_wide_lambda_small_packings():
    # more than a quarter turn apart: at most the 4 vertices of a regular tetrahedron
    for seed in range(5):
        assert len(greedy_lambda_packing(3, math.pi / 2 + 0.01, seed, 2000).points) <= 4
        # beyond 2pi/3 no three points fit
        assert len(greedy_lambda_packing(3, 2 * math.pi / 3 + 0.01, seed, 2000).points) <= 2


def test_lambda_range():
    with pytest.raises(ValueError):
        greedy_lambda_packing(3, 0.0, 0)


def test_octahedron_polytope_is_cube():
    X = PackingSpec(3, math.pi / 2 - 0.01, 0, OCTA, 20000)
    P = packing_polytope(X)
    assert len(P.vertices) == 8
    assert np.allclose(np.abs(P.vertices), 1.0, atol=1e-12)
    assert all(len(f) == 4 for f in P.facets)


def test_octahedron_cells_analytic():
    X = PackingSpec(3, math.pi / 2 - 0.01, 0, OCTA, 20000)
    res = voronoi_diameter_check(X, n_samples=50000)
    # each cell is a projected cube face; its diagonal spans arccos(-1/3)
    assert res.analytic_diameter == pytest.approx(math.acos(-1 / 3), abs=1e-9)
    assert res.max_cell_diameter <= res.analytic_diameter + 1e-12
    assert res.max_cell_diameter == pytest.approx(res.analytic_diameter, abs=0.05)
    assert res.passed


def test_packing_polytope_needs_enough_points():
    X = PackingSpec(3, 1.0, 0, OCTA[:3], 100)
    with pytest.raises(ValueError):
        packing_polytope(X)
    # all points in one octant: the origin is outside their hull
    cap = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], float)
    cap /= np.linalg.norm(cap, axis=1, keepdims=True)
    hemi = PackingSpec(3, 0.5, 0, cap, 100)
    with pytest.raises(ValueError):
        packing_polytope(hemi)


def test_two_point_cells_are_hemispheres():
    X = PackingSpec(3, 3.0, 0, OCTA[:2], 20000)
    res = voronoi_diameter_check(X, n_samples=20000)
    assert res.analytic_diameter is None
    assert res.max_cell_diameter <= math.pi + 1e-12


def test_check_unpacks_to_value_and_flag():
    X = greedy_lambda_packing(3, math.pi / 6, seed=1, pool_size=3000)
    diam, ok = voronoi_diameter_check(X, n_samples=20000)
    assert ok and diam > 0
