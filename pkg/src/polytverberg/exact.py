"""
Exact rational geometry: vectors, affine rank, and an LP feasibility kernel.

Scalars are :class:`fractions.Fraction`, which is always kept in lowest terms
with a positive denominator. Vectors are plain tuples of fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction
QVector = tuple  # tuple[Fraction, ...]

__all__ = [
    "Rational",
    "QVector",
    "DimensionError",
    "LinSystem",
    "Feasibility",
    "qvec",
    "format_rational",
    "parse_rational",
    "lp_feasible",
    "solve_standard_form",
    "conv_intersection_point",
    "affine_rank",
    "rank",
    "nullspace",
    "dot",
]


class DimensionError(ValueError):
    """Raised when vectors or constraint rows have inconsistent lengths."""


def qvec(values: Iterable) -> tuple:
    """Convert an iterable of ints/strings/fractions to a rational vector."""
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)


def format_rational(q: Fraction) -> str:
    """Canonical ``"p/q"`` string; the denominator is omitted when it is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(s)


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise DimensionError(f"dot of length {len(a)} and {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class LinSystem:
    """Constraints ``<a, x> = b`` (equalities) and ``<a, x> <= b`` (inequalities).

    Variables are free (unrestricted in sign) unless bounded by an inequality.
    """

    dim: int
    equalities: tuple = ()
    inequalities: tuple = ()

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError("dim must be positive")
        eqs = tuple((qvec(a), Fraction(b)) for a, b in self.equalities)
        ineqs = tuple((qvec(a), Fraction(b)) for a, b in self.inequalities)
        for a, _ in eqs + ineqs:
            if len(a) != self.dim:
                raise DimensionError(
                    f"constraint row of length {len(a)} in a system of dim {self.dim}"
                )
        object.__setattr__(self, "equalities", eqs)
        object.__setattr__(self, "inequalities", ineqs)

    def satisfied_by(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise DimensionError("witness has wrong length")
        return all(dot(a, x) == b for a, b in self.equalities) and all(
            dot(a, x) <= b for a, b in self.inequalities
        )

    def is_farkas_certificate(self, w: Sequence) -> bool:
        """Check ``w`` combines the rows into ``0 <= (negative)``.

        ``w`` lists one multiplier per equality followed by one per inequality;
        inequality multipliers must be nonnegative.
        """
        n_eq = len(self.equalities)
        rows = self.equalities + self.inequalities
        if len(w) != len(rows):
            return False
        if any(wi < 0 for wi in w[n_eq:]):
            return False
        combo = [Fraction(0)] * self.dim
        rhs = Fraction(0)
        for wi, (a, b) in zip(w, rows):
            if wi:
                for k, ak in enumerate(a):
                    combo[k] += wi * ak
                rhs += wi * b
        return all(c == 0 for c in combo) and rhs < 0


@dataclass(frozen=True)
class Feasibility:
    """Outcome of :func:`lp_feasible`: either a witness or a Farkas certificate."""

    feasible: bool
    witness: Optional[tuple] = None
    farkas: Optional[tuple] = None

    def __bool__(self):
        return self.feasible


def solve_standard_form(A: Sequence[Sequence], b: Sequence):
    """Phase-one simplex for ``{A y = b, y >= 0}`` with Bland's rule.

    Returns ``(y, None)`` if feasible and ``(None, u)`` otherwise, where ``u``
    satisfies ``A^T u <= 0`` and ``b . u > 0`` (the Farkas alternative).
    All arithmetic is exact.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return (Fraction(0),) * n, None
    # Flip rows so that b >= 0; artificial variables n..n+m-1 form the start basis.
    sign = [(-1 if b[i] < 0 else 1) for i in range(m)]
    width = n + m
    T = []
    for i in range(m):
        s = sign[i]
        row = [Fraction(s * a) for a in A[i]]
        row.extend(Fraction(1) if k == i else Fraction(0) for k in range(m))
        row.append(Fraction(s * b[i]))
        T.append(row)
    basis = list(range(n, n + m))
    # Reduced costs of phase one: c_j - c_B B^-1 A_j with c = 1 on artificials.
    cost = [Fraction(0)] * (width + 1)
    for row in T:
        for k in range(n):
            cost[k] -= row[k]
        cost[width] -= row[width]

    while True:
        enter = -1
        for k in range(width):
            if cost[k] < 0:
                enter = k
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][width] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        # Phase one is bounded below by zero, so a leaving row always exists.
        prow = T[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv for v in prow]
            T[leave] = prow
        nz = [k for k in range(width + 1) if prow[k]]
        for i in range(m):
            if i != leave:
                row = T[i]
                fac = row[enter]
                if fac:
                    for k in nz:
                        row[k] -= fac * prow[k]
        fac = cost[enter]
        for k in nz:
            cost[k] -= fac * prow[k]
        basis[leave] = enter

    if cost[width] == 0:
        y = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                y[j] = T[i][width]
        return tuple(y), None
    # Reduced cost of artificial column n+i is 1 - u'_i, where u' is the dual
    # for the sign-flipped rows; undo the flip.
    u = tuple(sign[i] * (1 - cost[n + i]) for i in range(m))
    return None, u


def lp_feasible(sys: LinSystem) -> Feasibility:
    """Decide feasibility of a :class:`LinSystem` exactly.

    A feasible answer carries a witness ``x`` satisfying every row exactly.
    An infeasible answer carries multipliers (equalities first, then
    inequalities, the latter nonnegative) whose combination reads
    ``0 <= c`` with ``c < 0``.
    """
    if not isinstance(sys, LinSystem):
        raise TypeError("lp_feasible expects a LinSystem")
    n = sys.dim
    eqs, ineqs = sys.equalities, sys.inequalities
    n_in = len(ineqs)
    # columns: slacks s >= 0 (one per inequality), then x+ and x- with x = x+ - x-
    A, b = [], []
    for a, rhs in eqs:
        A.append([Fraction(0)] * n_in + list(a) + [-v for v in a])
        b.append(rhs)
    for i, (a, rhs) in enumerate(ineqs):
        slack = [Fraction(0)] * n_in
        slack[i] = Fraction(1)
        A.append(slack + list(a) + [-v for v in a])
        b.append(rhs)
    y, u = solve_standard_form(A, b)
    if y is not None:
        x = tuple(y[n_in + k] - y[n_in + n + k] for k in range(n))
        assert sys.satisfied_by(x)
        return Feasibility(True, witness=x)
    w = tuple(-v for v in u)
    assert sys.is_farkas_certificate(w)
    return Feasibility(False, farkas=w)


def _convex_system(groups: Sequence[Sequence[Sequence]], lift: bool):
    """Rows asking for one nonnegative weight vector per group with equal
    weighted sums. ``lift`` appends a constant 1 to every point so that the
    weights in each group sum to the same value (homogeneous form)."""
    d = len(groups[0][0])
    width = sum(len(g) for g in groups)
    offsets, off = [], 0
    for g in groups:
        offsets.append(off)
        off += len(g)
    A, b = [], []
    coords = d + 1 if lift else d
    for j in range(1, len(groups)):
        for c in range(coords):
            row = [Fraction(0)] * width
            for i, pt in enumerate(groups[0]):
                row[offsets[0] + i] = Fraction(pt[c]) if c < d else Fraction(1)
            for i, pt in enumerate(groups[j]):
                row[offsets[j] + i] = -(Fraction(pt[c]) if c < d else Fraction(1))
            A.append(row)
            b.append(Fraction(0))
    return A, b, offsets


def conv_intersection_point(sets: Sequence[Sequence[Sequence]], d: int):
    """Find a common point of the convex hulls of ``sets``.

    Returns ``(z, coeffs)`` with ``coeffs[j]`` convex weights over
    ``sets[j]`` reproducing ``z`` exactly, or ``None`` if the hulls have no
    common point.
    """
    if not sets:
        raise ValueError("conv_intersection_point needs at least one set")
    for s in sets:
        if not s:
            raise ValueError("every set must be nonempty")
        for pt in s:
            if len(pt) != d:
                raise DimensionError(f"point of length {len(pt)} in dimension {d}")
    groups = [[qvec(pt) for pt in s] for s in sets]
    A, b, offsets = _convex_system(groups, lift=False)
    width = sum(len(g) for g in groups)
    for j, g in enumerate(groups):
        row = [Fraction(0)] * width
        for i in range(len(g)):
            row[offsets[j] + i] = Fraction(1)
        A.append(row)
        b.append(Fraction(1))
    y, _ = solve_standard_form(A, b)
    if y is None:
        return None
    coeffs = [tuple(y[offsets[j] : offsets[j] + len(g)]) for j, g in enumerate(groups)]
    z = tuple(
        sum((c * pt[k] for c, pt in zip(coeffs[0], groups[0])), Fraction(0))
        for k in range(d)
    )
    return z, coeffs


def relint_intersection_point(sets: Sequence[Sequence[Sequence]], d: int):
    """Like :func:`conv_intersection_point`, but every point of every set must
    get a strictly positive weight, i.e. the common point lies in the relative
    interior of each hull.

    Uses the homogeneous form: weights ``w >= 1`` with equal lifted sums
    ``sum w_i (p_i, 1)`` across sets; any strictly positive solution rescales
    to one with ``w >= 1``.
    """
    groups = [[qvec(pt) for pt in s] for s in sets]
    A, _, offsets = _convex_system(groups, lift=True)
    width = sum(len(g) for g in groups)
    # Substitute w = 1 + v, v >= 0: A v = -A 1.
    b = [-sum(row, Fraction(0)) for row in A]
    y, _ = solve_standard_form(A, b) if A else ((Fraction(0),) * width, None)
    if y is None:
        return None
    coeffs = []
    for j, g in enumerate(groups):
        w = [1 + y[offsets[j] + i] for i in range(len(g))]
        total = sum(w, Fraction(0))
        coeffs.append(tuple(wi / total for wi in w))
    z = tuple(
        sum((c * pt[k] for c, pt in zip(coeffs[0], groups[0])), Fraction(0))
        for k in range(d)
    )
    return z, coeffs


def _echelon(rows: list) -> tuple:
    """Row-reduce in place (exact); returns (reduced rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        pr[:] = [v * inv for v in pr]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * bb for a, bb in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(_echelon([qvec(r) for r in rows])[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of ``{x : M x = 0}`` for the matrix with the given rows."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    red, pivots = _echelon([qvec(r) for r in rows])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -red[i][f]
        basis.append(tuple(x))
    return basis


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of ``points`` (exact)."""
    if not points:
        raise ValueError("affine_rank of an empty point list")
    base = qvec(points[0])
    diffs = []
    for p in points[1:]:
        q = qvec(p)
        if len(q) != len(base):
            raise DimensionError("points of different dimension")
        diffs.append([a - c for a, c in zip(q, base)])
    return rank(diffs) if diffs else 0
