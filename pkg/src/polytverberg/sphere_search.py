"""
Numerical search for equal-value orbits of the cyclic rotation action on
orthonormal 2-frames.

For a frame ``(x, y)`` and a prime ``p``, the orbit points are
``x_k = cos(2 pi k / p) x + sin(2 pi k / p) y`` for ``k = 0..p-1``; they lie
on a great circle with consecutive gaps ``2 pi / p``. The solver minimizes
the squared spread of ``f(x_0), ..., f(x_{p-1})`` around their mean over the
Stiefel manifold.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from sympy import isprime

log = logging.getLogger(__name__)

__all__ = [
    "SmoothMap",
    "StiefelFrame",
    "OrbitResult",
    "random_frame",
    "rotate_frame",
    "orbit_points",
    "residual",
    "residual_and_gradient",
    "solve_bu",
    "gradient_check",
    "random_smooth_map",
]

_NODE_TYPES = {"proj", "const", "add", "mul", "sin", "cos", "affine"}


def _check_node(node, n):
    op = node.get("op")
    if op not in _NODE_TYPES:
        raise ValueError(f"unknown node type {op!r}")
    if op == "proj":
        if not 0 <= int(node["index"]) < n:
            raise ValueError(f"projection index {node['index']} out of range")
    elif op == "const":
        float(node["value"])
    elif op in ("add", "mul"):
        if not node["args"]:
            raise ValueError(f"{op} needs arguments")
        for a in node["args"]:
            _check_node(a, n)
    elif op in ("sin", "cos"):
        _check_node(node["arg"], n)
    elif op == "affine":
        if len(node["weights"]) != n:
            raise ValueError("affine weights must match the input dimension")


def _eval(node, X):
    """Value ``(k,)`` and gradient ``(k, n)`` of a scalar node at rows of ``X``."""
    op = node["op"]
    k, n = X.shape
    if op == "proj":
        i = int(node["index"])
        g = np.zeros((k, n))
        g[:, i] = 1.0
        return X[:, i].copy(), g
    if op == "const":
        return np.full(k, float(node["value"])), np.zeros((k, n))
    if op == "affine":
        w = np.asarray(node["weights"], dtype=float)
        return X @ w + float(node.get("bias", 0.0)), np.tile(w, (k, 1))
    if op == "add":
        v, g = _eval(node["args"][0], X)
        for a in node["args"][1:]:
            va, ga = _eval(a, X)
            v, g = v + va, g + ga
        return v, g
    if op == "mul":
        v, g = _eval(node["args"][0], X)
        for a in node["args"][1:]:
            va, ga = _eval(a, X)
            v, g = v * va, g * va[:, None] + ga * v[:, None]
        return v, g
    if op == "sin":
        v, g = _eval(node["arg"], X)
        return np.sin(v), np.cos(v)[:, None] * g
    if op == "cos":
        v, g = _eval(node["arg"], X)
        return np.cos(v), -np.sin(v)[:, None] * g
    raise ValueError(f"unknown node type {op!r}")


@dataclass(frozen=True, eq=False)
class SmoothMap:
    """A map R^n -> R^d given as ``d`` expression trees.

    Node types: ``proj`` (``index``), ``const`` (``value``), ``add`` and
    ``mul`` (``args``), ``sin`` and ``cos`` (``arg``), and ``affine``
    (``weights``, ``bias``).
    """

    components: tuple
    n: int

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a map needs at least one component")
        for c in comps:
            _check_node(c, self.n)
        object.__setattr__(self, "components", comps)

    @property
    def d(self) -> int:
        return len(self.components)

    @classmethod
    def from_json(cls, obj: dict) -> "SmoothMap":
        return cls(tuple(obj["components"]), int(obj["input_dim"]))

    def to_json(self) -> dict:
        return {"input_dim": self.n, "components": list(self.components)}

    def jacobian(self, X: np.ndarray):
        """Values ``(k, d)`` and Jacobians ``(k, d, n)`` at the rows of ``X``."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        vals, grads = zip(*(_eval(c, X) for c in self.components))
        return np.stack(vals, axis=1), np.stack(grads, axis=1)

    def __call__(self, X: np.ndarray) -> np.ndarray:
        return self.jacobian(X)[0]


@dataclass(frozen=True, eq=False)
class StiefelFrame:
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.shape != y.shape or x.ndim != 1:
            raise ValueError("frame vectors must be 1-d of equal length")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def defect(self) -> float:
        """Largest violation of the orthonormality constraints."""
        return max(
            abs(np.linalg.norm(self.x) - 1.0),
            abs(np.linalg.norm(self.y) - 1.0),
            abs(float(self.x @ self.y)),
        )

    def is_valid(self, tol: float = 1e-12) -> bool:
        return self.defect() <= tol

    @classmethod
    def orthonormalize(cls, x, y) -> "StiefelFrame":
        """Gram-Schmidt on the pair, done twice for accuracy."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        x = x / np.linalg.norm(x)
        for _ in range(2):
            y = y - (x @ y) * x
            y = y / np.linalg.norm(y)
        return cls(x, y)


def random_frame(n: int, rng: np.random.Generator) -> StiefelFrame:
    return StiefelFrame.orthonormalize(rng.standard_normal(n), rng.standard_normal(n))


def rotate_frame(frame: StiefelFrame, angle: float) -> StiefelFrame:
    c, s = math.cos(angle), math.sin(angle)
    return StiefelFrame(c * frame.x + s * frame.y, -s * frame.x + c * frame.y)


def _orbit_weights(p: int):
    t = 2 * math.pi * np.arange(p) / p
    return np.cos(t), np.sin(t)


def orbit_points(frame: StiefelFrame, p: int) -> np.ndarray:
    """First vectors of the frames ``g^k (x, y)``, ``k = 0..p-1`` (rows)."""
    if p < 2:
        raise ValueError("p must be >= 2")
    c, s = _orbit_weights(p)
    return c[:, None] * frame.x + s[:, None] * frame.y


def _centered(values: np.ndarray) -> np.ndarray:
    return values - values.mean(axis=0, keepdims=True)


def residual(f: SmoothMap, frame: StiefelFrame, p: int):
    """Norm of the mean-centered stacked values and the centered vector."""
    pts = orbit_points(frame, p)
    vals = f(pts)
    if not np.all(np.isfinite(vals)):
        bad = int(np.argwhere(~np.isfinite(vals))[0][0])
        raise FloatingPointError(f"non-finite map value at {pts[bad]!r}")
    vec = _centered(vals).reshape(-1)
    return float(np.linalg.norm(vec)), vec


def residual_and_gradient(f: SmoothMap, x: np.ndarray, y: np.ndarray, p: int):
    """Squared residual and its Euclidean gradient in ``(x, y)``.

    The mean term drops out of the gradient because centered blocks sum to zero.
    """
    c, s = _orbit_weights(p)
    pts = c[:, None] * x + s[:, None] * y
    vals, jac = f.jacobian(pts)
    cen = _centered(vals)
    g_pts = 2.0 * np.einsum("kd,kdn->kn", cen, jac)
    return float(np.sum(cen * cen)), c @ g_pts, s @ g_pts


def _tangent(X: np.ndarray, G: np.ndarray) -> np.ndarray:
    """Project an ambient gradient ``G`` (n x 2) onto the tangent space at ``X``."""
    sym = 0.5 * (X.T @ G + G.T @ X)
    return G - X @ sym


def _retract(X: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(X)
    return q * np.sign(np.diag(r))


@dataclass(frozen=True, eq=False)
class OrbitResult:
    frame: StiefelFrame
    points: np.ndarray
    values: np.ndarray
    residual: float
    restart: int
    iterations: int
    success: bool

    def great_circle_error(self) -> float:
        B = np.stack([self.frame.x, self.frame.y], axis=1)
        off = self.points - (self.points @ B) @ B.T
        return float(np.abs(off).max())

    def min_pairwise_distance(self) -> float:
        # 2 atan2(|a-b|, |a+b|) stays accurate near 0 and pi, unlike arccos
        a, b = np.triu_indices(len(self.points), 1)
        A, B = self.points[a], self.points[b]
        dist = 2 * np.arctan2(np.linalg.norm(A - B, axis=1), np.linalg.norm(A + B, axis=1))
        return float(dist.min())


def _descend(f, X, p, tol, max_iter):
    val, gx, gy = residual_and_gradient(f, X[:, 0], X[:, 1], p)
    step = 1.0
    it = 0
    for it in range(1, max_iter + 1):
        if math.sqrt(val) < tol:
            break
        G = _tangent(X, np.stack([gx, gy], axis=1))
        gnorm2 = float(np.sum(G * G))
        if gnorm2 == 0.0:
            break
        t = step
        while True:
            Y = _retract(X - t * G)
            nval, ngx, ngy = residual_and_gradient(f, Y[:, 0], Y[:, 1], p)
            if nval <= val - 1e-4 * t * gnorm2:
                break
            t *= 0.5
            if t < 1e-20:
                return X, val, it
        X, val, gx, gy = Y, nval, ngx, ngy
        # let the trial step grow again after each accepted step
        step = min(t * 2.0, 1e6)
    return X, val, it


def solve_bu(
    f: SmoothMap,
    m: int,
    d: int,
    p: int,
    seed: int = 0,
    tol: float = 1e-8,
    max_restarts: int = 50,
    max_iter: int = 5000,
) -> Optional[OrbitResult]:
    """Multi-start Riemannian gradient descent for an equal-value orbit.

    Returns the first restart whose residual drops below ``tol``; otherwise
    the best attempt with ``success=False``. ``None`` only if
    ``max_restarts`` is zero.
    """
    if f.n != m + 1 or f.d != d:
        raise ValueError(f"map must send R^{m + 1} to R^{d}")
    if not isprime(p):
        warnings.warn(f"p={p} is not prime; no existence guarantee applies")
    if m < d * (p - 1) + 1:
        warnings.warn(f"m={m} < d(p-1)+1={d * (p - 1) + 1}; existence is not guaranteed")
    rng = np.random.default_rng(seed)
    best = None
    for restart in range(max_restarts):
        frame = random_frame(m + 1, rng)
        X0 = np.stack([frame.x, frame.y], axis=1)
        X, val, iters = _descend(f, X0, p, tol, max_iter)
        fr = StiefelFrame.orthonormalize(X[:, 0], X[:, 1])
        res, _ = residual(f, fr, p)
        pts = orbit_points(fr, p)
        out = OrbitResult(fr, pts, f(pts), res, restart, iters, res < tol)
        if out.success:
            log.debug("solved at restart %d after %d iterations", restart, iters)
            return out
        if best is None or res < best.residual:
            best = out
    return best


def gradient_check(
    f: SmoothMap, frame: StiefelFrame, p: int, h_step: float = 1e-5, seed: int = 0
) -> float:
    """Max relative error between analytic directional derivatives of the
    squared residual and central differences, over 10 random tangent directions."""
    if not 1e-8 <= h_step <= 1e-4:
        raise ValueError("h_step must lie in [1e-8, 1e-4]")
    rng = np.random.default_rng(seed)
    X = np.stack([frame.x, frame.y], axis=1)
    _, gx, gy = residual_and_gradient(f, frame.x, frame.y, p)
    G = np.stack([gx, gy], axis=1)
    worst = 0.0
    for _ in range(10):
        xi = _tangent(X, rng.standard_normal(X.shape))
        xi /= np.linalg.norm(xi)
        analytic = float(np.sum(G * xi))
        plus = residual_and_gradient(f, *(X + h_step * xi).T, p)[0]
        minus = residual_and_gradient(f, *(X - h_step * xi).T, p)[0]
        numeric = (plus - minus) / (2 * h_step)
        scale = max(abs(analytic), abs(numeric), 1e-8)
        worst = max(worst, abs(analytic - numeric) / scale)
    return worst


def random_smooth_map(n: int, d: int, seed: int, terms: int = 3, kind: str = "trig") -> SmoothMap:
    """Seeded smooth test maps R^n -> R^d.

    ``kind="trig"``: sums of ``a sin(w.x + b)`` plus a quadratic monomial.
    ``kind="odd"``: odd polynomial (linear plus cubic) plus a constant.
    """
    rng = np.random.default_rng(seed)
    comps = []
    for _ in range(d):
        args = []
        if kind == "trig":
            for _ in range(terms):
                aff = {
                    "op": "affine",
                    "weights": [float(w) for w in rng.normal(size=n)],
                    "bias": float(rng.uniform(0, 2 * math.pi)),
                }
                args.append(
                    {"op": "mul", "args": [{"op": "const", "value": float(rng.normal())},
                                           {"op": "sin", "arg": aff}]}
                )
            i, j = (int(v) for v in rng.integers(0, n, size=2))
            args.append(
                {"op": "mul", "args": [{"op": "const", "value": float(rng.normal())},
                                       {"op": "proj", "index": i}, {"op": "proj", "index": j}]}
            )
        elif kind == "odd":
            args.append({"op": "affine", "weights": [float(w) for w in rng.normal(size=n)]})
            i, j, k = (int(v) for v in rng.integers(0, n, size=3))
            args.append(
                {"op": "mul", "args": [{"op": "const", "value": float(rng.normal())},
                                       {"op": "proj", "index": i}, {"op": "proj", "index": j},
                                       {"op": "proj", "index": k}]}
            )
            args.append({"op": "const", "value": float(rng.normal())})
        else:
            raise ValueError(f"unknown map kind {kind!r}")
        comps.append({"op": "add", "args": args})
    return SmoothMap(tuple(comps), n)
