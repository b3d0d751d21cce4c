"""
Polytope families with exact vertex coordinates and their face lattices.

Vertex indices are 0-based everywhere. A face is identified with its vertex
index set.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .exact import DimensionError, affine_rank, dot, nullspace, qvec

__all__ = [
    "Polytope",
    "Face",
    "SkeletonGraph",
    "make_simplex",
    "make_cross",
    "make_cube",
    "make_cyclic",
    "gale_evenness_facets",
    "facets_bruteforce",
    "faces_of_dim",
    "all_proper_faces",
    "is_k_neighborly",
    "skeleton",
    "is_triangle_free",
    "min_degree",
]


@dataclass(frozen=True, order=True)
class Face:
    vertex_indices: tuple
    dim: int


@dataclass(frozen=True, eq=False)
class Polytope:
    """A full-dimensional V-polytope together with its facet-vertex incidences.

    Parameters
    ----------
    vertices : sequence of rational vectors
        The extreme points, all of length ``dim``.
    facets : sequence of vertex index sets
        One entry per facet, sorted.
    name : str
        Optional label used in reports.
    """

    vertices: tuple
    facets: tuple
    dim: int
    name: str = ""

    def __post_init__(self):
        verts = tuple(qvec(v) for v in self.vertices)
        for v in verts:
            if len(v) != self.dim:
                raise DimensionError("vertex length differs from polytope dim")
        facets = tuple(sorted(tuple(sorted(f)) for f in self.facets))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "facets", facets)

    @classmethod
    def from_vertices(cls, vertices, name: str = "") -> "Polytope":
        """Build from extreme points, computing facets by brute force."""
        verts = [qvec(v) for v in vertices]
        return cls(tuple(verts), tuple(facets_bruteforce(verts)), len(verts[0]), name)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def face_sets(self) -> frozenset:
        """All nonempty proper faces as frozensets of vertex indices."""
        facets = [frozenset(f) for f in self.facets]
        seen = set(facets)
        frontier = list(facets)
        while frontier:
            nxt = []
            for F in frontier:
                for G in facets:
                    H = F & G
                    if H and H not in seen:
                        seen.add(H)
                        nxt.append(H)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def _face_dims(self) -> dict:
        dims = {}
        for F in self.face_sets:
            if len(F) <= 2:
                # a 1- or 2-vertex face is a vertex or an edge
                dims[F] = len(F) - 1
            else:
                dims[F] = affine_rank([self.vertices[i] for i in sorted(F)])
        return dims

    def face_dim(self, F) -> int:
        return self._face_dims[frozenset(F)]

    def minimal_face(self, support) -> frozenset:
        """Smallest face containing the given vertex indices."""
        S = frozenset(support)
        out = frozenset(range(self.n_vertices))
        for f in self.facets:
            fs = frozenset(f)
            if S <= fs:
                out &= fs
        return out

    @cached_property
    def facet_inequalities(self) -> tuple:
        """Per facet, ``(a, b)`` with ``<a, x> <= b`` valid and tight on the facet."""
        out = []
        for f in self.facets:
            a, b = _hyperplane_through([self.vertices[i] for i in f], self.dim)
            # orient so that the other vertices satisfy <a,x> <= b
            other = next(
                (v for k, v in enumerate(self.vertices) if k not in f and dot(a, v) != b),
                None,
            )
            if other is not None and dot(a, other) > b:
                a, b = tuple(-x for x in a), -b
            out.append((a, b))
        return tuple(out)

    def validate(self) -> None:
        """Check the type invariants; raise ``ValueError`` on violation."""
        if affine_rank(self.vertices) != self.dim:
            raise ValueError("polytope is not full-dimensional")
        for i in range(self.n_vertices):
            if self.minimal_face({i}) != frozenset({i}):
                raise ValueError(f"vertex {i} is not an extreme point")
        for (a, b), f in zip(self.facet_inequalities, self.facets):
            for k, v in enumerate(self.vertices):
                val = dot(a, v)
                if val > b or (val == b) != (k in f):
                    raise ValueError(f"facet {f} is not supporting")


def _hyperplane_through(points, dim):
    """Normal ``a`` and offset ``b`` of the affine hyperplane spanned by points."""
    rows = [list(p) + [Fraction(-1)] for p in points]
    ns = nullspace(rows, dim + 1)
    if len(ns) != 1:
        raise ValueError("points do not span a unique hyperplane")
    v = ns[0]
    return tuple(v[:dim]), v[dim]


def make_simplex(m: int) -> Polytope:
    """The m-simplex with vertices ``0, e_1, ..., e_m`` in R^m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    verts = [tuple(Fraction(0) for _ in range(m))]
    for i in range(m):
        verts.append(tuple(Fraction(int(k == i)) for k in range(m)))
    facets = [tuple(c) for c in itertools.combinations(range(m + 1), m)]
    return Polytope(tuple(verts), tuple(facets), m, f"simplex({m})")


def make_cross(m: int) -> Polytope:
    """The m-dimensional cross-polytope.

    Vertex ``2k`` is ``+e_k`` and vertex ``2k+1`` is ``-e_k``, so antipodal
    pairs have adjacent indices.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    verts = []
    for k in range(m):
        for s in (1, -1):
            verts.append(tuple(Fraction(s * int(i == k)) for i in range(m)))
    facets = [
        tuple(2 * k + bit for k, bit in enumerate(bits))
        for bits in itertools.product((0, 1), repeat=m)
    ]
    return Polytope(tuple(verts), tuple(facets), m, f"cross({m})")


def make_cube(m: int) -> Polytope:
    """The unit cube ``{0,1}^m``; vertex ``i`` has coordinate ``k`` equal to bit ``k`` of ``i``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    verts = [tuple(Fraction((i >> k) & 1) for k in range(m)) for i in range(2**m)]
    facets = []
    for k in range(m):
        for bit in (0, 1):
            facets.append(tuple(i for i in range(2**m) if (i >> k) & 1 == bit))
    return Polytope(tuple(verts), tuple(facets), m, f"cube({m})")


def gale_evenness_facets(n: int, m: int) -> list:
    """Facets of the cyclic polytope C(m, n), as sorted 0-based index tuples.

    An m-subset S is a facet iff every pair of indices outside S has an even
    number of elements of S strictly between them.
    """
    if n <= m:
        raise ValueError("need n > m")
    out = []
    for S in itertools.combinations(range(n), m):
        inside = set(S)
        outside = [i for i in range(n) if i not in inside]
        ok = True
        for a, b in zip(outside, outside[1:]):
            # checking consecutive outside pairs suffices
            if sum(1 for s in S if a < s < b) % 2:
                ok = False
                break
        if ok:
            out.append(S)
    return out


def make_cyclic(m: int, n: int, params: Optional[Sequence] = None) -> Polytope:
    """Cyclic polytope: n points ``(t, t^2, ..., t^m)`` on the moment curve.

    ``params`` defaults to ``t_i = i`` for ``i = 1..n``.
    """
    if not n > m >= 2:
        raise ValueError("need n > m >= 2")
    ts = qvec(params) if params is not None else qvec(range(1, n + 1))
    if len(ts) != n:
        raise ValueError("need exactly n parameters")
    if any(a >= b for a, b in zip(ts, ts[1:])):
        raise ValueError("moment-curve parameters must be strictly increasing")
    verts = tuple(tuple(t**k for k in range(1, m + 1)) for t in ts)
    return Polytope(verts, tuple(gale_evenness_facets(n, m)), m, f"cyclic({m},{n})")


def facets_bruteforce(vertices) -> list:
    """Facets of conv(vertices) by enumerating spanning vertex subsets.

    Only meant for small inputs (about 12 points in dimension 5).
    """
    verts = [qvec(v) for v in vertices]
    dim = len(verts[0])
    r = affine_rank(verts)
    if r != dim:
        raise ValueError(f"points are not full-dimensional (affine rank {r} < {dim})")
    found = set()
    for S in itertools.combinations(range(len(verts)), dim):
        pts = [verts[i] for i in S]
        if affine_rank(pts) != dim - 1:
            continue
        a, b = _hyperplane_through(pts, dim)
        vals = [dot(a, v) - b for v in verts]
        if all(v <= 0 for v in vals) or all(v >= 0 for v in vals):
            found.add(tuple(i for i, v in enumerate(vals) if v == 0))
    return sorted(found)


def all_proper_faces(P: Polytope) -> list:
    """Nonempty proper faces, sorted by dimension then vertex tuple."""
    return sorted(
        (Face(tuple(sorted(F)), P.face_dim(F)) for F in P.face_sets),
        key=lambda f: (f.dim, f.vertex_indices),
    )


def faces_of_dim(P: Polytope, k: int) -> list:
    if not 0 <= k < P.dim:
        raise ValueError(f"face dimension {k} out of range for a {P.dim}-polytope")
    return [f for f in all_proper_faces(P) if f.dim == k]


def is_k_neighborly(P: Polytope, k: int) -> bool:
    """True iff every k vertices span a face."""
    if not 1 <= k <= P.dim / 2:
        warnings.warn(f"k={k} outside 1..dim/2; neighborliness is unusual there")
    faces = P.face_sets
    return all(
        frozenset(S) in faces for S in itertools.combinations(range(P.n_vertices), k)
    )


@dataclass(frozen=True)
class SkeletonGraph:
    n: int
    edges: tuple

    @cached_property
    def adjacency(self) -> tuple:
        adj = [set() for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return tuple(frozenset(s) for s in adj)


def skeleton(P: Polytope) -> SkeletonGraph:
    if P.dim == 1:
        # a segment is its own (improper) 1-face
        return SkeletonGraph(P.n_vertices, ((0, 1),))
    edges = tuple(f.vertex_indices for f in faces_of_dim(P, 1))
    return SkeletonGraph(P.n_vertices, edges)


def min_degree(G: SkeletonGraph) -> int:
    return min(len(a) for a in G.adjacency)


def is_triangle_free(G: SkeletonGraph) -> bool:
    adj = G.adjacency
    for a, b in G.edges:
        if adj[a] & adj[b]:
            return False
    return True
