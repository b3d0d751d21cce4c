"""
Exhaustive Tverberg-type searches with exact witnesses.

The searches here are brute force by design: they enumerate partitions or
tuples of faces in a fixed lexicographic order and decide each candidate with
the exact LP kernel, so every positive answer comes with a certificate that
:func:`validate_witness` re-checks by substitution.
"""

from __future__ import annotations

import itertools
import logging
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .exact import (
    DimensionError,
    conv_intersection_point,
    nullspace,
    qvec,
    relint_intersection_point,
)
from .polytope import Polytope, make_cross

log = logging.getLogger(__name__)

__all__ = [
    "LinearMap",
    "SearchParams",
    "TverbergWitness",
    "InvalidWitness",
    "validate_witness",
    "restricted_growth_partitions",
    "tverberg_partition",
    "polytope_tverberg_search",
    "cross_bound",
    "CrossCount",
    "count_cross_witnesses",
]


class InvalidWitness(AssertionError):
    """A witness failed exact re-validation."""


@dataclass(frozen=True)
class LinearMap:
    """Affine map ``x -> matrix @ x + offset`` with rational entries."""

    matrix: tuple
    offset: tuple = None

    def __post_init__(self):
        mat = tuple(qvec(row) for row in self.matrix)
        if not mat or any(len(row) != len(mat[0]) for row in mat):
            raise DimensionError("matrix rows must be nonempty and of equal length")
        off = qvec(self.offset) if self.offset is not None else (Fraction(0),) * len(mat)
        if len(off) != len(mat):
            raise DimensionError("offset length must equal the number of rows")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "offset", off)

    @property
    def d(self) -> int:
        return len(self.matrix)

    @property
    def ambient(self) -> int:
        return len(self.matrix[0])

    def __call__(self, v: Sequence) -> tuple:
        if len(v) != self.ambient:
            raise DimensionError(f"map expects length {self.ambient}, got {len(v)}")
        return tuple(
            sum((a * x for a, x in zip(row, v)), Fraction(0)) + c
            for row, c in zip(self.matrix, self.offset)
        )

    def images(self, P: Polytope) -> list:
        return [self(v) for v in P.vertices]


@dataclass(frozen=True)
class SearchParams:
    r: int
    d: int
    forbidden_vertex: Optional[int] = None

    def __post_init__(self):
        if self.r < 1 or self.d < 1:
            raise ValueError("r and d must be positive")


@dataclass(frozen=True)
class TverbergWitness:
    """``faces[j]`` are vertex (or point) indices, ``coeffs[j]`` convex weights
    over ``faces[j]`` in the same order, and ``z`` the common image point."""

    faces: tuple
    z: tuple
    coeffs: tuple

    @property
    def face_set(self) -> frozenset:
        return frozenset(frozenset(f) for f in self.faces)


def validate_witness(
    w: TverbergWitness,
    images: Sequence[Sequence],
    *,
    polytope: Optional[Polytope] = None,
    forbidden: Optional[int] = None,
    minimal: bool = False,
) -> bool:
    """Re-check a witness by exact substitution.

    ``images[i]`` is the image of vertex/point ``i``. With ``polytope`` given,
    each part must be a face; with ``minimal`` each part must be the minimal
    face of its point (all weights positive, support closed in the lattice).
    Raises :class:`InvalidWitness` on the first violated condition.
    """
    if len(w.faces) != len(w.coeffs):
        raise InvalidWitness("faces and coeffs differ in length")
    used = set()
    for face, cs in zip(w.faces, w.coeffs):
        if not face:
            raise InvalidWitness("empty part")
        if len(face) != len(cs):
            raise InvalidWitness(f"coefficient count mismatch on {face}")
        if used & set(face):
            raise InvalidWitness(f"part {face} overlaps an earlier part")
        used |= set(face)
        if forbidden is not None and forbidden in face:
            raise InvalidWitness(f"part {face} uses the forbidden vertex {forbidden}")
        if any(c < 0 for c in cs) or sum(cs, Fraction(0)) != 1:
            raise InvalidWitness(f"weights on {face} are not convex")
        point = [Fraction(0)] * len(w.z)
        for i, c in zip(face, cs):
            for k, x in enumerate(images[i]):
                point[k] += c * x
        if tuple(point) != tuple(w.z):
            raise InvalidWitness(f"part {face} does not reproduce z")
        if polytope is not None:
            fs = frozenset(face)
            if fs not in polytope.face_sets:
                raise InvalidWitness(f"{face} is not a face")
            if minimal:
                support = [i for i, c in zip(face, cs) if c > 0]
                if polytope.minimal_face(support) != fs:
                    raise InvalidWitness(f"{face} is not the minimal face of its point")
        elif minimal and any(c == 0 for c in cs):
            raise InvalidWitness(f"zero weight in {face}")
    return True


def restricted_growth_partitions(n: int, r: int) -> Iterator[tuple]:
    """Set partitions of ``range(n)`` into exactly ``r`` nonempty blocks.

    Yields tuples of blocks in lexicographic order of restricted-growth
    strings, so each unordered partition appears exactly once.
    """
    if r > n or r < 1:
        return
    a = [0] * n

    def rec(i, used):
        if n - i < r - used:
            return
        if i == n:
            if used == r:
                blocks = [[] for _ in range(r)]
                for k, b in enumerate(a):
                    blocks[b].append(k)
                yield tuple(tuple(b) for b in blocks)
            return
        for b in range(min(used + 1, r)):
            a[i] = b
            yield from rec(i + 1, max(used, b + 1))

    yield from rec(0, 0)


class _Separators:
    """Integer projections of a point set onto candidate separating directions.

    The directions are the coordinate axes and the normals of hyperplanes
    through ``d`` of the points. If the closed projection intervals of some
    parts are disjoint along one of them, the parts' hulls cannot meet. For
    two parts in the plane the converse holds as well.
    """

    _MAX_DIRS = 2000

    def __init__(self, pts):
        d = len(pts[0])
        dirs = {tuple(Fraction(int(i == k)) for i in range(d)) for k in range(d)}
        if d > 1 and math.comb(len(pts), d) <= self._MAX_DIRS:
            for S in itertools.combinations(pts, d):
                rows = [[a - b for a, b in zip(p, S[0])] for p in S[1:]]
                ns = nullspace(rows, d)
                if len(ns) == 1:
                    dirs.add(tuple(ns[0]))
        self._proj = []
        for u in sorted(dirs):
            vals = [sum((a * x for a, x in zip(u, p)), Fraction(0)) for p in pts]
            den = math.lcm(*(v.denominator for v in vals))
            self._proj.append([int(v * den) for v in vals])

    def separated(self, parts) -> bool:
        for vals in self._proj:
            lo = max(min(vals[i] for i in part) for part in parts)
            hi = min(max(vals[i] for i in part) for part in parts)
            if lo > hi:
                return True
        return False


def tverberg_partition(points: Sequence[Sequence], r: int) -> Optional[TverbergWitness]:
    """First partition of ``points`` into ``r`` parts whose hulls share a point.

    Parts are returned in restricted-growth order; ``None`` means no
    partition exists.
    """
    pts = [qvec(p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    if r > len(pts):
        raise ValueError(f"cannot split {len(pts)} points into {r} nonempty parts")
    d = len(pts[0])
    sep = _Separators(pts)
    for parts in restricted_growth_partitions(len(pts), r):
        if sep.separated(parts):
            continue
        hit = conv_intersection_point([[pts[i] for i in part] for part in parts], d)
        if hit is not None:
            z, coeffs = hit
            return TverbergWitness(parts, z, tuple(tuple(c) for c in coeffs))
    return None


class OverlapOracle:
    """Decides whether the relative interiors of the images of vertex sets meet.

    Cheap exact necessary conditions (projections onto a few directions, and
    pairwise overlap for three or more sets) run before the LP.
    """

    def __init__(self, images: Sequence[Sequence]):
        self.images = [qvec(p) for p in images]
        self.d = len(self.images[0])
        d = self.d
        dirs = [tuple(int(i == k) for i in range(d)) for k in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                for s in (1, -1):
                    dirs.append(tuple(1 if k == i else s if k == j else 0 for k in range(d)))
        self._proj = []
        for u in dirs:
            vals = [sum((a * x for a, x in zip(u, p)), Fraction(0)) for p in self.images]
            den = math.lcm(*(v.denominator for v in vals))
            self._proj.append([int(v * den) for v in vals])
        self._spans = {}
        self._pairs = {}
        self.lp_calls = 0

    def _span(self, face: tuple) -> list:
        sp = self._spans.get(face)
        if sp is None:
            sp = []
            for vals in self._proj:
                xs = [vals[i] for i in face]
                sp.append((min(xs), max(xs)))
            self._spans[face] = sp
        return sp

    def projections_meet(self, faces: Sequence[tuple]) -> bool:
        spans = [self._span(f) for f in faces]
        for k in range(len(self._proj)):
            lo = max(s[k][0] for s in spans)
            hi = min(s[k][1] for s in spans)
            points = {s[k][0] for s in spans if s[k][0] == s[k][1]}
            if points:
                if len(points) > 1:
                    return False
                (a,) = points
                for s in spans:
                    if s[k][0] != s[k][1] and not s[k][0] < a < s[k][1]:
                        return False
            elif not lo < hi:
                return False
        return True

    def pair_meets(self, f: tuple, g: tuple) -> bool:
        key = (f, g) if f < g else (g, f)
        res = self._pairs.get(key)
        if res is None:
            res = self.projections_meet(key) and self.solve(key) is not None
            self._pairs[key] = res
        return res

    def solve(self, faces: Sequence[tuple]):
        self.lp_calls += 1
        return relint_intersection_point(
            [[self.images[i] for i in f] for f in faces], self.d
        )

    def witness(self, faces: Sequence[tuple]) -> Optional[TverbergWitness]:
        if not self.projections_meet(faces):
            return None
        if len(faces) >= 3:
            for a in range(len(faces)):
                for b in range(a + 1, len(faces)):
                    if not self.pair_meets(faces[a], faces[b]):
                        return None
        hit = self.solve(faces)
        if hit is None:
            return None
        z, coeffs = hit
        return TverbergWitness(tuple(faces), z, tuple(tuple(c) for c in coeffs))


def _max_disjoint(faces: Sequence[tuple], cap: int) -> int:
    """Largest number (capped) of pairwise disjoint faces; singletons suffice."""
    verts = {i for f in faces for i in f}
    return min(len(verts), cap)


def polytope_tverberg_search(
    P: Polytope,
    f: LinearMap,
    params: SearchParams,
    mode: str = "first",
) -> list:
    """Tuples of ``r`` pairwise vertex-disjoint faces whose images overlap.

    Faces are minimal supports: a tuple qualifies when some common image point
    lies in the image of the relative interior of every face. Tuples are
    unordered, enumerated lexicographically on sorted vertex tuples; ``first``
    stops at the first hit and ``all`` returns every hit.
    """
    if mode not in ("first", "all"):
        raise ValueError("mode must be 'first' or 'all'")
    if f.ambient != P.dim:
        raise DimensionError("map does not match the polytope's ambient dimension")
    r = params.r
    bad = params.forbidden_vertex
    if bad is not None and not 0 <= bad < P.n_vertices:
        raise ValueError(f"forbidden vertex {bad} out of range")
    faces = sorted(tuple(sorted(F)) for F in P.face_sets if bad not in F)
    if _max_disjoint(faces, r) < r:
        log.warning("no %d pairwise vertex-disjoint faces exist; nothing to search", r)
        return []
    oracle = OverlapOracle(f.images(P))
    masks = [sum(1 << i for i in F) for F in faces]
    found = []

    def rec(start, chosen, used):
        if len(chosen) == r:
            w = oracle.witness([faces[i] for i in chosen])
            if w is not None:
                found.append(w)
                return mode == "first"
            return False
        for i in range(start, len(faces)):
            if masks[i] & used:
                continue
            F = faces[i]
            if chosen and r >= 3 and not all(oracle.pair_meets(faces[c], F) for c in chosen):
                continue
            if rec(i + 1, chosen + [i], used | masks[i]):
                return True
        return False

    rec(0, [], 0)
    log.debug("search on %s: %d LP calls, %d hits", P.name, oracle.lp_calls, len(found))
    return found


def cross_bound(m: int, r: int) -> Fraction:
    """Lower bound ``(1/r!) ((r-1)/2)^(m-1)`` on overlapping face sets of a cross-polytope."""
    if m < 1 or r < 2:
        raise ValueError("need m >= 1 and r >= 2")
    return Fraction(1, math.factorial(r)) * Fraction(r - 1, 2) ** (m - 1)


@dataclass(frozen=True)
class CrossCount:
    count: int
    bound: Fraction
    passed: bool
    hypotheses_hold: bool
    witnesses: tuple = ()

    @property
    def threshold(self) -> int:
        return math.ceil(self.bound)


def count_cross_witnesses(
    m: int, d: int, r: int, f: LinearMap, forbidden: int, keep_witnesses: bool = False
) -> CrossCount:
    """Count unordered sets of ``r`` pairwise vertex-disjoint faces of the
    m-cross-polytope, none containing ``forbidden``, whose images overlap.

    Each set is counted once, by its minimal-face form. ``passed`` compares
    the count with the ceiling of :func:`cross_bound`.
    """
    from sympy import isprime

    ok = True
    if not isprime(r):
        warnings.warn(f"r={r} is not prime; the lower bound is not guaranteed")
        ok = False
    if 2 * (m - 1) < (r - 1) * (d + 1):
        warnings.warn(f"m={m} is below 1+(r-1)(d+1)/2; the lower bound is not guaranteed")
        ok = False
    P = make_cross(m)
    hits = polytope_tverberg_search(P, f, SearchParams(r, d, forbidden), mode="all")
    bound = cross_bound(m, r)
    return CrossCount(
        count=len(hits),
        bound=bound,
        passed=len(hits) >= math.ceil(bound),
        hypotheses_hold=ok,
        witnesses=tuple(hits) if keep_witnesses else (),
    )
