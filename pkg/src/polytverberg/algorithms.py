"""
Constructive overlap algorithms: the colorful reduction for cross-polytopes,
Carathéodory reduction, the neighborly construction, and the greedy
edge-matching construction for maps to the line.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from sympy import isprime, nextprime, primerange

from .exact import conv_intersection_point, nullspace, qvec
from .polytope import Polytope, SkeletonGraph, is_k_neighborly, make_cross
from .tverberg import (
    LinearMap,
    SearchParams,
    TverbergWitness,
    _Separators,
    polytope_tverberg_search,
    restricted_growth_partitions,
    tverberg_partition,
)

log = logging.getLogger(__name__)

__all__ = [
    "ColoredConfig",
    "colorful_tverberg",
    "cross_via_colorful",
    "CrossColorfulResult",
    "caratheodory_reduce",
    "neighborly_construct",
    "D1Witness",
    "TriangleFound",
    "triangle_free_d1",
    "validate_d1_witness",
    "next_prime_in_gap",
    "prime_gap_bound_holds",
]


@dataclass(frozen=True)
class ColoredConfig:
    points: tuple
    colors: tuple

    def __post_init__(self):
        if len(self.points) != len(self.colors):
            raise ValueError("points and colors differ in length")
        object.__setattr__(self, "points", tuple(qvec(p) for p in self.points))
        object.__setattr__(self, "colors", tuple(self.colors))


def colorful_tverberg(cfg: ColoredConfig, p: int) -> Optional[TverbergWitness]:
    """First partition into ``p`` rainbow parts (at most one point per color)
    whose convex hulls share a point."""
    if not isprime(p):
        warnings.warn(f"p={p} is not prime; no existence guarantee applies")
    pts = cfg.points
    if p > len(pts):
        return None
    d = len(pts[0])
    sep = _Separators(pts)
    for parts in restricted_growth_partitions(len(pts), p):
        if any(len({cfg.colors[i] for i in part}) < len(part) for part in parts):
            continue
        if sep.separated(parts):
            continue
        hit = conv_intersection_point([[pts[i] for i in part] for part in parts], d)
        if hit is not None:
            z, coeffs = hit
            return TverbergWitness(parts, z, tuple(tuple(c) for c in coeffs))
    return None


@dataclass(frozen=True)
class CrossColorfulResult:
    witness: TverbergWitness
    p: int
    used_vertices: tuple
    fallback: bool = False


def _shrink_to_support(w: TverbergWitness) -> TverbergWitness:
    faces, coeffs = [], []
    for face, cs in zip(w.faces, w.coeffs):
        keep = [(i, c) for i, c in zip(face, cs) if c > 0]
        faces.append(tuple(i for i, _ in keep))
        coeffs.append(tuple(c for _, c in keep))
    return TverbergWitness(tuple(faces), w.z, tuple(coeffs))


def cross_via_colorful(m: int, d: int, r: int, f: LinearMap) -> CrossColorfulResult:
    """Overlapping faces of the m-cross-polytope via a rainbow partition.

    Picks a prime ``p`` with ``r <= p <= 2r-3``, colors the first
    ``(p-1)(d+1)+1`` vertices by antipodal pair, finds a rainbow partition of
    their images into ``p`` parts, and keeps the first ``r`` parts (reduced
    to the support of their weights). Rainbow parts contain no antipodal
    pair, so they are faces.
    """
    if m < (r - 1) * (d + 1):
        raise ValueError(f"need m >= (r-1)(d+1) = {(r - 1) * (d + 1)}")
    P = make_cross(m)
    primes = list(primerange(r, 2 * r - 2))
    if not primes:
        log.info("no prime in [%d, %d]; falling back to the direct search", r, 2 * r - 3)
        hits = polytope_tverberg_search(P, f, SearchParams(r, d), mode="first")
        if not hits:
            raise RuntimeError("direct search found no overlapping faces")
        return CrossColorfulResult(hits[0], r, tuple(range(P.n_vertices)), True)
    p = primes[0]
    n_used = (p - 1) * (d + 1) + 1
    used = tuple(range(n_used))
    cfg = ColoredConfig([f(P.vertices[i]) for i in used], [i // 2 for i in used])
    w = colorful_tverberg(cfg, p)
    if w is None:
        raise RuntimeError("no rainbow partition found; the input map is degenerate")
    w = _shrink_to_support(w)
    # part indices coincide with vertex indices because the used vertices are 0..n_used-1
    parts = sorted(zip(w.faces, w.coeffs))[:r]
    for face, _ in parts:
        assert all(i ^ 1 not in face for i in face), "antipodal pair inside a rainbow part"
    out = TverbergWitness(tuple(fc for fc, _ in parts), w.z, tuple(c for _, c in parts))
    return CrossColorfulResult(out, p, used)


def caratheodory_reduce(points: Sequence[Sequence], z: Sequence, coeffs: Sequence):
    """Shrink a convex combination for ``z`` to at most ``d+1`` points.

    Returns ``(indices, new_coeffs)``: a subset of ``range(len(points))`` and
    positive convex weights on it reproducing ``z`` exactly.
    """
    pts = [qvec(p) for p in points]
    lam = list(qvec(coeffs))
    z = qvec(z)
    d = len(z)
    if len(lam) != len(pts):
        raise ValueError("one coefficient per point required")
    if any(c < 0 for c in lam) or sum(lam) != 1:
        raise ValueError("coefficients are not convex")
    recon = tuple(sum((c * p[k] for c, p in zip(lam, pts)), Fraction(0)) for k in range(d))
    if recon != z:
        raise ValueError("coefficients do not reproduce z")
    while True:
        S = [i for i, c in enumerate(lam) if c > 0]
        if len(S) <= d + 1:
            break
        # affine dependence: sum a_i p_i = 0 and sum a_i = 0
        rows = [[pts[i][k] for i in S] for k in range(d)] + [[Fraction(1)] * len(S)]
        alpha = nullspace(rows, len(S))[0]
        if not any(a > 0 for a in alpha):
            alpha = tuple(-a for a in alpha)
        t, hit = min((lam[i] / a, pos) for pos, (i, a) in enumerate(zip(S, alpha)) if a > 0)
        for pos, i in enumerate(S):
            lam[i] -= t * alpha[pos]
        lam[S[hit]] = Fraction(0)
    S = tuple(i for i, c in enumerate(lam) if c > 0)
    return S, tuple(lam[i] for i in S)


def neighborly_construct(P: Polytope, f: LinearMap, r: int) -> TverbergWitness:
    """Overlapping faces of a (d+1)-neighborly polytope.

    Runs the Tverberg oracle on the images of the first ``(r-1)(d+1)+1``
    vertices, reduces each part to at most ``d+1`` vertices containing the
    common point, and reads each reduced part as a face.
    """
    d = f.d
    if not is_k_neighborly(P, d + 1):
        raise ValueError(f"{P.name or 'polytope'} is not {d + 1}-neighborly")
    need = (r - 1) * (d + 1) + 1
    if P.n_vertices < need:
        raise ValueError(f"need at least {need} vertices, have {P.n_vertices}")
    images = [f(v) for v in P.vertices[:need]]
    part = tverberg_partition(images, r)
    if part is None:
        raise RuntimeError("Tverberg oracle found no partition")
    faces, coeffs = [], []
    for block, cs in zip(part.faces, part.coeffs):
        idx, lam = caratheodory_reduce([images[i] for i in block], part.z, cs)
        face = tuple(block[i] for i in idx)
        assert frozenset(face) in P.face_sets
        faces.append(face)
        coeffs.append(lam)
    return TverbergWitness(tuple(faces), part.z, tuple(coeffs))


@dataclass(frozen=True)
class D1Witness:
    edges: tuple
    final_vertex: int
    value: Fraction


class TriangleFound(RuntimeError):
    """The greedy matching got stuck; carries the triangle that blocks it."""

    def __init__(self, triangle):
        super().__init__(f"skeleton contains the triangle {triangle}")
        self.triangle = triangle


def triangle_free_d1(G: SkeletonGraph, values: Sequence, r: int) -> D1Witness:
    """``r-1`` edges and one vertex, pairwise disjoint, whose value ranges share
    the value of the r-th smallest vertex.

    Vertices are sorted by ``(value, index)``. For ``i = 1..r-1`` the i-th
    vertex is matched to the earliest later-ranked neighbour outside the
    first ``r`` and not yet used. Only the edge list and the values are used.
    """
    vals = qvec(values)
    if len(vals) != G.n:
        raise ValueError("one value per vertex required")
    if r < 1:
        raise ValueError("r must be positive")
    if G.n < r:
        raise ValueError("fewer vertices than r")
    adj = G.adjacency
    if r > 1 and min(len(a) for a in adj) < r:
        raise ValueError("minimum degree below r")
    order = sorted(range(G.n), key=lambda v: (vals[v], v))
    rank = {v: k for k, v in enumerate(order)}
    first = set(order[:r])
    taken = []
    edges = []
    for i in range(r - 1):
        v = order[i]
        j = next(
            (u for u in sorted(adj[v], key=rank.get) if u not in first and u not in taken),
            None,
        )
        if j is None:
            for t, u in zip(order, taken):
                if u in adj[v] and t in adj[v]:
                    raise TriangleFound((v, t, u))
            raise TriangleFound((v,))
        taken.append(j)
        edges.append((v, j))
    w = D1Witness(tuple(edges), order[r - 1], vals[order[r - 1]])
    validate_d1_witness(w, G, vals)
    return w


def validate_d1_witness(w: D1Witness, G: SkeletonGraph, values: Sequence) -> bool:
    vals = qvec(values)
    used = {w.final_vertex}
    edge_set = {tuple(sorted(e)) for e in G.edges}
    if vals[w.final_vertex] != w.value:
        raise AssertionError("value does not match the final vertex")
    for a, b in w.edges:
        if tuple(sorted((a, b))) not in edge_set:
            raise AssertionError(f"{a}-{b} is not an edge")
        if a in used or b in used:
            raise AssertionError("faces are not vertex-disjoint")
        used |= {a, b}
        lo, hi = sorted((vals[a], vals[b]))
        if not lo <= w.value <= hi:
            raise AssertionError(f"value {w.value} outside the range of edge {a}-{b}")
    return True


def next_prime_in_gap(r: int) -> int:
    """Smallest prime ``p >= r``; checks ``p - r < r^(7/11)`` exactly."""
    if r < 2:
        raise ValueError("r must be >= 2")
    p = r if isprime(r) else int(nextprime(r))
    if not prime_gap_bound_holds(r, p):
        raise AssertionError(f"prime gap bound fails at r={r}, p={p}")
    return p


def prime_gap_bound_holds(r: int, p: int) -> bool:
    """``p < r + r^(7/11)``, decided in integers as ``(p-r)^11 < r^7``."""
    return p >= r and (p - r) ** 11 < r**7
