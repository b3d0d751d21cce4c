"""
Greedy spherical packings, their tangent-halfspace polytopes, and sampled
Voronoi cell diameters. Floating point throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import ConvexHull

__all__ = [
    "PackingSpec",
    "greedy_lambda_packing",
    "uniform_sphere",
    "FloatPolytope",
    "packing_polytope",
    "VoronoiCheck",
    "voronoi_diameter_check",
    "geodesic",
]


def geodesic(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.arccos(np.clip(np.sum(a * b, axis=-1), -1.0, 1.0))


def uniform_sphere(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` uniform points on the unit sphere in R^m."""
    x = rng.standard_normal((n, m))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


@dataclass(frozen=True, eq=False)
class PackingSpec:
    m: int  # ambient dimension; the sphere is S^(m-1)
    lam: float
    seed: int
    points: np.ndarray
    pool_size: int


def greedy_lambda_packing(m: int, lam: float, seed: int, pool_size: int = 20000) -> PackingSpec:
    """Scan a seeded pool of sphere points, keeping each one farther than
    ``lam`` from everything kept so far. The result is maximal in the pool."""
    if not 0 < lam < math.pi:
        raise ValueError("lambda must lie in (0, pi)")
    pool = uniform_sphere(pool_size, m, np.random.default_rng(seed))
    cos_lam = math.cos(lam)
    kept = np.empty((0, m))
    for x in pool:
        # distance > lam  <=>  cosine < cos(lam)
        if kept.shape[0] == 0 or np.max(kept @ x) < cos_lam:
            kept = np.vstack([kept, x])
    return PackingSpec(m, lam, seed, kept, pool_size)


@dataclass(frozen=True, eq=False)
class FloatPolytope:
    """``{y : <y, x> <= 1 for x in normals}`` with its vertices and, per
    normal (i.e. per facet), the indices of the vertices on that facet."""

    normals: np.ndarray
    vertices: np.ndarray
    facets: tuple


def packing_polytope(X: PackingSpec, tol: float = 1e-9) -> FloatPolytope:
    """Intersection of the halfspaces tangent to the sphere at the packing
    points, computed as the polar dual of ``conv X``."""
    pts = X.points
    if len(pts) < X.m + 1:
        raise ValueError("fewer than m+1 points: the tangent polytope is unbounded")
    hull = ConvexHull(pts)
    # hull.equations rows (n, c) mean n.x + c <= 0 with |n| = 1; the dual vertex is n / (-c)
    offsets = -hull.equations[:, -1]
    if np.any(offsets <= tol):
        raise ValueError("origin is not interior to conv(X): the polytope is unbounded")
    raw = hull.equations[:, :-1] / offsets[:, None]
    verts = []
    index = np.empty(len(raw), dtype=int)
    for i, v in enumerate(raw):
        for j, w in enumerate(verts):
            if np.linalg.norm(v - w) <= 1e-7:
                index[i] = j
                break
        else:
            index[i] = len(verts)
            verts.append(v)
    verts = np.array(verts)
    facets = [set() for _ in range(len(pts))]
    for simplex, vi in zip(hull.simplices, index):
        for p in simplex:
            facets[p].add(int(vi))
    return FloatPolytope(pts, verts, tuple(tuple(sorted(f)) for f in facets))


@dataclass(frozen=True)
class VoronoiCheck:
    max_cell_diameter: float  # sampled estimate
    passed: bool
    slack: float
    bound: float  # 2 * lambda
    analytic_diameter: Optional[float]  # from the tangent polytope, when available

    def __iter__(self):
        yield self.max_cell_diameter
        yield self.passed


def _cell_diameters_from_polytope(poly: FloatPolytope) -> np.ndarray:
    out = []
    for f in poly.facets:
        V = poly.vertices[list(f)]
        V = V / np.linalg.norm(V, axis=1, keepdims=True)
        G = np.clip(V @ V.T, -1.0, 1.0)
        out.append(float(np.arccos(G.min())))
    return np.array(out)


def voronoi_diameter_check(
    X: PackingSpec,
    n_samples: int = 100_000,
    seed: int = 0,
    slack: Optional[float] = None,
) -> VoronoiCheck:
    """Estimate the largest spherical Voronoi cell diameter of a packing.

    Dense seeded samples are assigned to their nearest packing point and each
    cell's diameter is the largest pairwise distance among its samples. The
    check passes when that is at most ``2 lambda + slack``; the default slack
    is twice the typical spacing of the pool the packing was drawn from.
    """
    m = X.m
    pts = X.points
    area = 2 * math.pi ** (m / 2) / math.gamma(m / 2)
    if slack is None:
        slack = 2 * (area / X.pool_size) ** (1 / (m - 1))
    samples = uniform_sphere(n_samples, m, np.random.default_rng(seed))
    # include the points themselves so single-sample cells are not empty
    samples = np.vstack([pts, samples])
    owner = np.argmax(samples @ pts.T, axis=1)
    order = np.argsort(owner, kind="stable")
    bounds = np.searchsorted(owner[order], np.arange(len(pts) + 1))
    best = 0.0
    for c in range(len(pts)):
        cell = samples[order[bounds[c] : bounds[c + 1]]]
        if len(cell) > 1:
            best = max(best, float(np.arccos(np.clip((cell @ cell.T).min(), -1.0, 1.0))))
    analytic = None
    if len(pts) >= m + 1:
        try:
            analytic = float(_cell_diameters_from_polytope(packing_polytope(X)).max())
        except ValueError:
            analytic = None
    bound = 2 * X.lam
    return VoronoiCheck(best, best <= bound + slack, slack, bound, analytic)
