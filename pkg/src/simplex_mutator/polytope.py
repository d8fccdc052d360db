"""Exact convex geometry for small point sets.

Points are tuples of ints or Fractions.  Hulls are computed by collecting
lexicographically extreme points (which are always vertices) until every input
point satisfies every facet inequality of the hull collected so far.  Facets of
a small vertex set are found by brute force over affinely independent subsets,
which is fine in dimension <= 6 with a few dozen vertices.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from . import lattice as la

Point = tuple


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _integral_row(coeffs: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = lcm(*(Fraction(c).denominator for c in coeffs)) if coeffs else 1
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = la.gcd_list(ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


def normal_vector(diffs: Sequence[Sequence]) -> tuple[int, ...] | None:
    """Integer normal to r-1 vectors in Q^r; None if they are dependent."""
    r = len(diffs) + 1
    rows = [[Fraction(x) for x in d] for d in diffs]
    x = []
    for j in range(r):
        minor = [row[:j] + row[j + 1:] for row in rows]
        x.append((-1) ** j * la.rational_det(minor))
    if not any(x):
        return None
    return _integral_row(x)


def affine_frame(points: Sequence[Point]):
    """Origin point and a basis (subset of differences) of the affine hull."""
    p0 = points[0]
    basis: list = []
    for p in points[1:]:
        d = _sub(p, p0)
        if la.rank(basis + [list(d)]) > len(basis):
            basis.append(list(d))
    return p0, basis


def affine_coordinates(points: Sequence[Point]):
    """Express points in coordinates of their own affine hull.

    Returns ``(dim, coords)`` where ``coords[i]`` is a Fraction tuple of length
    ``dim``.  Convexity is preserved by affine maps, so hull questions about
    lower-dimensional sets can be answered in these coordinates.
    """
    p0, basis = affine_frame(points)
    r = len(basis)
    if r == 0:
        return 0, [() for _ in points]
    # pick r coordinate rows where the basis is invertible
    n = len(p0)
    rows = []
    for i in range(n):
        trial = rows + [i]
        if la.rank([[basis[b][j] for b in range(r)] for j in trial]) == len(trial):
            rows = trial
        if len(rows) == r:
            break
    A = [[basis[b][i] for b in range(r)] for i in rows]
    Ainv = la.inverse(A)
    out = []
    for p in points:
        d = _sub(p, p0)
        out.append(tuple(sum(Ainv[a][k] * d[rows[k]] for k in range(r)) for a in range(r)))
    return r, out


def facets(vertices: Sequence[Point]) -> list[tuple[tuple[int, ...], Fraction]]:
    """Facet inequalities ``a.x <= b`` of a full-dimensional point set.

    ``a`` is a primitive integer vector and ``b`` rational.  Brute force: every
    affinely independent d-subset spanning a supporting hyperplane.
    """
    pts = list(dict.fromkeys(tuple(p) for p in vertices))
    d = len(pts[0])
    found = {}
    for subset in combinations(range(len(pts)), d):
        base = pts[subset[0]]
        nrm = normal_vector([_sub(pts[i], base) for i in subset[1:]])
        if nrm is None:
            continue
        b = _dot(nrm, base)
        vals = [_dot(nrm, p) for p in pts]
        if all(v <= b for v in vals):
            found[nrm] = Fraction(b)
        elif all(v >= b for v in vals):
            found[tuple(-x for x in nrm)] = Fraction(-b)
    return sorted(found.items())


def _lex_extreme(points, direction=None, maximize=True):
    if direction is None:
        cand = points
    else:
        vals = [_dot(direction, p) for p in points]
        best = max(vals) if maximize else min(vals)
        cand = [p for p, v in zip(points, vals) if v == best]
    return max(cand)


def _full_dim_hull(points: list[Point]) -> list[Point]:
    d = len(points[0])
    verts = [max(points), min(points)]
    verts = list(dict.fromkeys(verts))
    while True:
        _, basis = affine_frame(verts)
        if len(basis) == d:
            break
        # a direction orthogonal to the current affine hull
        if basis:
            M = [[Fraction(x) for x in b] for b in basis]
            c = _null_direction(M, d)
        else:
            c = tuple(int(i == 0) for i in range(d))
        ref = _dot(c, verts[0])
        vals = [_dot(c, p) for p in points]
        if max(vals) > ref:
            verts.append(_lex_extreme(points, c, True))
        else:
            verts.append(_lex_extreme(points, c, False))
    while True:
        added = False
        for a, b in facets(verts):
            vals = [_dot(a, p) for p in points]
            if max(vals) > b:
                v = _lex_extreme(points, a, True)
                if v not in verts:
                    verts.append(v)
                    added = True
        if not added:
            return verts


def _null_direction(M, d):
    """Some nonzero integer vector orthogonal to the rows of M (rank < d)."""
    rows = [list(r) for r in M]
    r = len(rows)
    for extra in combinations(range(d), d - 1 - r):
        aug = rows + [[Fraction(int(i == e)) for i in range(d)] for e in extra]
        if la.rank(aug) == d - 1:
            v = normal_vector(aug)
            if v is not None:
                return v
    raise AssertionError("no orthogonal direction found")


def convex_hull_vertices(points: Iterable[Point]) -> list[Point]:
    """Vertices of conv(points), exact, sorted lexicographically."""
    pts = list(dict.fromkeys(tuple(p) for p in points))
    if len(pts) <= 1:
        return pts
    r, coords = affine_coordinates(pts)
    if r == 0:
        return [pts[0]]
    if r == 1:
        vals = [c[0] for c in coords]
        return sorted({pts[vals.index(min(vals))], pts[vals.index(max(vals))]})
    back = dict(zip(coords, pts))
    hull = _full_dim_hull(list(back))
    return sorted(back[c] for c in hull)


def contains(ineqs, x, strict=False) -> bool:
    if strict:
        return all(_dot(a, x) < b for a, b in ineqs)
    return all(_dot(a, x) <= b for a, b in ineqs)


def in_hull(points: Sequence[Point], x: Point) -> bool:
    """Exact membership of ``x`` in conv(points), any dimension of hull."""
    pts = list(dict.fromkeys(tuple(p) for p in points))
    r, coords = affine_coordinates(pts + [tuple(x)])
    r0, _ = affine_coordinates(pts)
    if r != r0:
        return False
    cx = coords[-1]
    coords = coords[:-1]
    if r == 0:
        return True
    if r == 1:
        vals = [c[0] for c in coords]
        return min(vals) <= cx[0] <= max(vals)
    hull = _full_dim_hull(list(dict.fromkeys(coords)))
    return contains(facets(hull), cx)


class _Enumerator:
    """Lattice points of {x : a.x <= b} via Fourier-Motzkin bounds.

    The inequalities are projected onto x_1..x_k for every k, so the nested
    loops only visit prefixes that extend to a rational point of the polytope.
    """

    def __init__(self, ineqs, dim):
        rows = []
        for a, b in ineqs:
            b = Fraction(b)
            row = [Fraction(x) for x in a] + [b]
            rows.append(self._normalize(row))
        self.dim = dim
        self.levels = [None] * (dim + 1)
        cur = sorted(set(rows))
        self.levels[dim] = cur
        for k in range(dim, 1, -1):
            cur = self._eliminate(cur, k - 1)
            self.levels[k - 1] = cur

    @staticmethod
    def _normalize(row):
        # positive rescaling only, so the inequality direction is kept
        return _integral_row(row)

    def _eliminate(self, rows, j):
        pos = [r for r in rows if r[j] > 0]
        neg = [r for r in rows if r[j] < 0]
        out = {r for r in rows if r[j] == 0}
        for p in pos:
            for q in neg:
                cp, cq = -q[j], p[j]
                new = tuple(cp * x + cq * y for x, y in zip(p, q))
                out.add(self._normalize(new))
        return sorted(out)

    def _bounds(self, k, prefix):
        # rows are primitive integer vectors, so floor/ceil stay in ints
        lo, hi = None, None
        for row in self.levels[k]:
            c = row[k - 1]
            rest = row[-1]
            for i in range(k - 1):
                rest -= row[i] * prefix[i]
            if c > 0:
                v = rest // c
                if hi is None or v < hi:
                    hi = v
            elif c < 0:
                v = -(rest // -c)
                if lo is None or v > lo:
                    lo = v
            elif rest < 0:
                return 1, 0
        if lo is None or hi is None:
            raise ValueError("unbounded polyhedron")
        return lo, hi

    def points(self):
        out = []
        prefix = []

        def rec(k):
            lo, hi = self._bounds(k, prefix)
            for v in range(lo, hi + 1):
                prefix.append(v)
                if k == self.dim:
                    out.append(tuple(prefix))
                else:
                    rec(k + 1)
                prefix.pop()

        rec(1)
        return out

    def count(self):
        prefix = []

        def rec(k):
            lo, hi = self._bounds(k, prefix)
            if k == self.dim:
                return max(0, hi - lo + 1)
            total = 0
            for v in range(lo, hi + 1):
                prefix.append(v)
                total += rec(k + 1)
                prefix.pop()
            return total

        return rec(1)


def lattice_points(ineqs, dim: int) -> list[tuple[int, ...]]:
    """All integer points of the bounded polyhedron ``{a.x <= b}``, sorted."""
    return _Enumerator(ineqs, dim).points()


def count_lattice_points(ineqs, dim: int) -> int:
    return _Enumerator(ineqs, dim).count()


def minkowski_points(A: Iterable[Point], B: Iterable[Point]) -> set[Point]:
    B = list(B)
    return {tuple(x + y for x, y in zip(a, b)) for a in A for b in B}
