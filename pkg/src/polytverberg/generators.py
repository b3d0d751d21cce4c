"""Seeded generators for reproducible random instances."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .exact import affine_rank
from .tverberg import LinearMap

__all__ = [
    "trial_seeds",
    "random_rational",
    "random_rational_points",
    "in_general_position",
    "seeded_rational_map",
    "SeededMap",
]


def trial_seeds(seed: int, n: int) -> list:
    """Independent per-trial seeds split from one 64-bit master seed."""
    children = np.random.SeedSequence(seed).spawn(n)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def random_rational(rng: random.Random, denom_bound: int) -> Fraction:
    return Fraction(rng.randint(-denom_bound, denom_bound), rng.randint(1, denom_bound))


def in_general_position(points: Sequence[Sequence]) -> bool:
    """Every subset of at most ``d+1`` points is affinely independent."""
    if not points:
        return True
    d = len(points[0])
    for k in range(2, min(d + 1, len(points)) + 1):
        for S in itertools.combinations(points, k):
            if affine_rank(S) != k - 1:
                return False
    return True


def random_rational_points(n: int, d: int, seed: int, denom_bound: int = 1000) -> list:
    """``n`` points in R^d in general position, drawn deterministically from ``seed``."""
    rng = random.Random(seed)
    while True:
        pts = [
            tuple(random_rational(rng, denom_bound) for _ in range(d)) for _ in range(n)
        ]
        if in_general_position(pts):
            return pts


@dataclass(frozen=True)
class SeededMap:
    map: LinearMap
    seed: int
    reseeds: int


def seeded_rational_map(
    d: int,
    ambient: int,
    seed: int,
    denom_bound: int = 1000,
    vertices: Optional[Sequence[Sequence]] = None,
) -> SeededMap:
    """Random rational affine map R^ambient -> R^d.

    With ``vertices`` given, draws are rejected until the vertex images are
    in general position; each rejection advances the seed by one and is
    counted in ``reseeds``.
    """
    if denom_bound < 1:
        raise ValueError("denom_bound must be >= 1")
    reseeds = 0
    s = seed
    while True:
        rng = random.Random(s)
        matrix = [
            [random_rational(rng, denom_bound) for _ in range(ambient)] for _ in range(d)
        ]
        offset = [random_rational(rng, denom_bound) for _ in range(d)]
        f = LinearMap(matrix, offset)
        if vertices is None or in_general_position([f(v) for v in vertices]):
            return SeededMap(f, seed, reseeds)
        reseeds += 1
        s += 1
