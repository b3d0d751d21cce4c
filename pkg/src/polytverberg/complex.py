"""
Spherical simplicial complexes from polytope boundaries.

The boundary of a full-dimensional polytope is triangulated (simplicial
faces are kept, other faces are coned from their vertex centroid) and then
projected radially from the vertex centroid onto the unit sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from .exact import affine_rank, dot
from .polytope import Polytope

__all__ = [
    "BoundaryComplex",
    "boundary_complex",
    "barycentric_subdivide",
    "subdivide_k",
    "face_diameter",
    "DecayRow",
    "subdivision_decay_report",
]


@dataclass(frozen=True, eq=False)
class BoundaryComplex:
    """Unit vectors in R^m plus top simplices (rows of ``m`` point indices)."""

    points: np.ndarray
    simplices: np.ndarray

    @property
    def m(self) -> int:
        return self.points.shape[1]

    def faces(self, k: int) -> np.ndarray:
        """Distinct k-simplices (rows of ``k+1`` sorted point indices)."""
        S = np.sort(self.simplices, axis=1)
        rows = [S[:, list(c)] for c in combinations(range(S.shape[1]), k + 1)]
        return np.unique(np.concatenate(rows), axis=0)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(self.faces(k)) for k in range(self.m))

    def ridges_ok(self) -> bool:
        """Every codimension-one face lies in exactly two top simplices."""
        S = np.sort(self.simplices, axis=1)
        m = S.shape[1]
        rows = np.concatenate([np.delete(S, i, axis=1) for i in range(m)])
        _, counts = np.unique(rows, axis=0, return_counts=True)
        return bool(np.all(counts == 2))

    def validate(self, tol: float = 1e-12) -> None:
        norms = np.linalg.norm(self.points, axis=1)
        if np.max(np.abs(norms - 1.0)) > tol:
            raise ValueError("points are not on the unit sphere")
        if not self.ridges_ok():
            raise ValueError("some ridge is not in exactly two simplices")


def _normalize(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def boundary_complex(P: Polytope) -> BoundaryComplex:
    """Triangulate the boundary of ``P`` and project it onto the unit sphere.

    Raises ``ValueError`` if ``P`` is not full-dimensional, since the vertex
    centroid must be an interior point.
    """
    m = P.dim
    if affine_rank(P.vertices) != m:
        raise ValueError("polytope must be full-dimensional")
    n = P.n_vertices
    center = tuple(sum(v[k] for v in P.vertices) / n for k in range(m))
    for a, b in P.facet_inequalities:
        if not dot(a, center) < b:
            raise ValueError("vertex centroid is not interior")

    faces_by_dim = {}
    for F in P.face_sets:
        faces_by_dim.setdefault(P.face_dim(F), []).append(F)
    coords = [tuple(v[k] - center[k] for k in range(m)) for v in P.vertices]
    apex = {}
    memo = {}

    def triangulate(F: frozenset, k: int) -> list:
        if F in memo:
            return memo[F]
        if len(F) == k + 1:
            out = [tuple(sorted(F))]
        else:
            if F not in apex:
                apex[F] = len(coords)
                coords.append(
                    tuple(sum(coords[i][c] for i in F) / len(F) for c in range(m))
                )
            b = apex[F]
            out = []
            for G in faces_by_dim.get(k - 1, []):
                if G < F:
                    out.extend((b,) + s for s in triangulate(G, k - 1))
        memo[F] = out
        return out

    simplices = []
    for f in P.facets:
        simplices.extend(triangulate(frozenset(f), m - 1))
    pts = _normalize(np.array([[float(x) for x in c] for c in coords]))
    return BoundaryComplex(pts, np.array(simplices, dtype=np.int64))


def barycentric_subdivide(C: BoundaryComplex) -> BoundaryComplex:
    """One barycentric subdivision, with new vertices pushed to the sphere.

    Each face of the complex gets one new vertex (the normalized mean of its
    vertices); each flag of faces of a top simplex becomes a new simplex.
    """
    S = C.simplices
    m = S.shape[1]
    perms = np.array(list(permutations(range(m))))
    flags = S[:, perms]  # (n_simplices, m!, m)
    flat = flags.reshape(-1, m)
    new_points = []
    new_simplex = np.empty_like(flat)
    offset = 0
    for length in range(1, m + 1):
        prefixes = np.sort(flat[:, :length], axis=1)
        uniq, inverse = np.unique(prefixes, axis=0, return_inverse=True)
        new_points.append(_normalize(C.points[uniq].sum(axis=1)))
        new_simplex[:, length - 1] = inverse.reshape(-1) + offset
        offset += len(uniq)
    return BoundaryComplex(np.concatenate(new_points), new_simplex)


def subdivide_k(P: Polytope, k: int) -> BoundaryComplex:
    C = boundary_complex(P)
    for _ in range(k):
        C = barycentric_subdivide(C)
    return C


def face_diameter(C: BoundaryComplex, tol: float = 1e-12) -> float:
    """Largest geodesic distance between two vertices of one simplex."""
    norms = np.linalg.norm(C.points, axis=1)
    if np.max(np.abs(norms - 1.0)) > tol:
        raise ValueError("complex points must be unit vectors")
    X = C.points[C.simplices]
    best = 1.0
    for i, j in combinations(range(X.shape[1]), 2):
        cos = np.einsum("ij,ij->i", X[:, i], X[:, j])
        best = min(best, float(cos.min()))
    return math.acos(max(-1.0, min(1.0, best)))


@dataclass(frozen=True)
class DecayRow:
    k: int
    diameter: float
    ratio: float  # nan on the k=0 row
    within_factor: bool  # ratio <= (m-1)/m; measurement only
    flagged: bool  # ratio >= 1


def subdivision_decay_report(P: Polytope, k_max: int) -> list:
    """Face diameters of ``P^(k)`` for ``k = 0..k_max`` and consecutive ratios."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    m = P.dim
    factor = (m - 1) / m
    C = boundary_complex(P)
    rows = []
    prev = None
    for k in range(k_max + 1):
        if k:
            C = barycentric_subdivide(C)
        diam = face_diameter(C)
        if prev is None:
            rows.append(DecayRow(k, diam, float("nan"), True, False))
        else:
            ratio = diam / prev
            rows.append(DecayRow(k, diam, ratio, ratio <= factor, ratio >= 1.0))
        prev = diam
    return rows
