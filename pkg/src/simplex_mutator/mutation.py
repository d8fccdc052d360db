"""Combinatorial mutations of lattice polytopes, specialised to simplices.

Two independent routes are provided.  :func:`mutate` evaluates the general
hull-of-slices construction for a caller-supplied height function and factor;
:func:`find_simplex_mutations` and :func:`mutate_simplex` use the partition
description of simplex mutations and the closed-form vertex formula.  Tests
check that the two agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import gcd
from typing import Sequence

from . import lattice as la
from . import polytope as geo
from .simplex import FanoSimplex, WeightSystem, validate_fano


class MutationError(ValueError):
    pass


class NotAFactorError(MutationError):
    def __init__(self, h: int, detail: str = ""):
        self.height = h
        super().__init__(f"not a factor at height {h}" + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class LatticePolytope:
    """Vertex description of a full-dimensional lattice polytope."""

    vertices: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @cached_property
    def inequalities(self):
        if len(self.vertices) == self.dim + 1:
            # simplex: one facet per omitted vertex, cheaper than brute force
            return _simplex_facets(self.vertices)
        return geo.facets(self.vertices)

    @cached_property
    def lattice_points(self) -> tuple[tuple[int, ...], ...]:
        return tuple(geo.lattice_points(self.inequalities, self.dim))

    def contains(self, x) -> bool:
        return geo.contains(self.inequalities, x)


def _simplex_facets(verts):
    out = []
    for i in range(len(verts)):
        rest = [v for j, v in enumerate(verts) if j != i]
        nrm = geo.normal_vector([geo._sub(v, rest[0]) for v in rest[1:]])
        b = geo._dot(nrm, rest[0])
        if geo._dot(nrm, verts[i]) > b:
            nrm, b = tuple(-x for x in nrm), -b
        out.append((nrm, Fraction(b)))
    return out


def as_polytope(P) -> LatticePolytope:
    if isinstance(P, LatticePolytope):
        return P
    if isinstance(P, FanoSimplex):
        return LatticePolytope(P.vertices)
    return LatticePolytope(tuple(tuple(v) for v in P))


@dataclass(frozen=True)
class Slice:
    """Lattice points of P at one height; ``vertices`` is their hull."""

    height: int
    points: tuple[tuple[int, ...], ...]

    @cached_property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(geo.convex_hull_vertices(self.points))


@dataclass(frozen=True)
class HeightData:
    w: tuple[int, ...]
    h_min: int
    h_max: int
    slices: dict

    def slice(self, h: int) -> Slice:
        return self.slices.get(h, Slice(h, ()))


def heights(P, w: Sequence[int]) -> HeightData:
    """Extreme heights of P under ``w`` and the lattice slices w_h(P)."""
    w = tuple(w)
    if not la.is_primitive(w):
        raise MutationError(f"height function {w} is not primitive")
    poly = as_polytope(P)
    hs = [la.pair(w, v) for v in poly.vertices]
    by_height: dict[int, list] = {}
    for p in poly.lattice_points:
        by_height.setdefault(la.pair(w, p), []).append(p)
    slices = {h: Slice(h, tuple(sorted(pts))) for h, pts in sorted(by_height.items())}
    return HeightData(w, min(hs), max(hs), slices)


@dataclass(frozen=True)
class Factor:
    w: tuple[int, ...]
    vertices: tuple[tuple[int, ...], ...]
    G: dict = field(compare=False)

    def G_vertices(self, h: int):
        return tuple(geo.convex_hull_vertices(self.G[h])) if self.G.get(h) else ()


def validate_factor(P, w: Sequence[int], F: Sequence[Sequence[int]], choice: str = "erosion") -> Factor:
    """Check that F is a factor of P for ``w`` and build the G_h.

    With ``choice="erosion"`` each G_h is the set of lattice points x at height
    h with x + (-h)F inside P, i.e. the lattice points of the Minkowski erosion
    of w_h(P) by (-h)F; every valid lattice G_h lies in its hull.  With
    ``choice="minimal"`` G_h holds one translate point per vertex of P at height
    h, the smallest admissible choice.
    """
    w = tuple(w)
    Fv = tuple(dict.fromkeys(tuple(int(x) for x in f) for f in F))
    if not Fv:
        raise MutationError("empty factor")
    if any(la.pair(w, f) != 0 for f in Fv):
        raise MutationError("factor does not lie at height 0")
    poly = as_polytope(P)
    data = heights(poly, w)
    G = {}
    for h in range(data.h_min, 0):
        pts = data.slice(h).points
        eroded = [
            x for x in pts
            if all(poly.contains(tuple(a - h * b for a, b in zip(x, f))) for f in Fv)
        ]
        verts_here = [v for v in poly.vertices if la.pair(w, v) == h]
        eroded_set = set(eroded)
        chosen = []
        for v in verts_here:
            # v is a vertex of P, so it lies in G_h + (-h)F exactly when it is
            # g + (-h)f for a lattice g of the erosion and a vertex f of F
            hits = [tuple(a + h * b for a, b in zip(v, f)) for f in Fv]
            hits = [g for g in hits if g in eroded_set]
            if not hits:
                raise NotAFactorError(h, f"vertex {v} is not covered")
            chosen.append(min(hits))
        if choice == "erosion":
            G[h] = tuple(eroded)
        elif choice == "minimal":
            G[h] = tuple(sorted(set(chosen)))
        else:
            raise ValueError(f"unknown G choice {choice!r}")
    return Factor(w, Fv, G)


def mutate(P, w: Sequence[int] | None = None, F=None, factor: Factor | None = None) -> LatticePolytope:
    """Hull of the G_h below height 0 and the slices w_h(P) + hF at or above it."""
    poly = as_polytope(P)
    if factor is None:
        factor = validate_factor(poly, w, F)
    data = heights(poly, factor.w)
    cand = set()
    for h, pts in factor.G.items():
        cand.update(pts)
    for h in range(0, data.h_max + 1):
        pts = data.slice(h).points
        cand |= geo.minkowski_points(pts, [tuple(h * x for x in f) for f in factor.vertices])
    return LatticePolytope(tuple(geo.convex_hull_vertices(cand)))


@dataclass(frozen=True)
class MutationMove:
    """A simplex mutation in partition form.

    ``min_face[0]`` is the anchor vertex kept fixed by the closed-form update;
    the factor is conv{0, (v_i - v_anchor)/|h_min|}.
    """

    apex: int
    min_face: tuple[int, ...]
    zero_set: tuple[int, ...]
    w: tuple[int, ...]
    h_min: int
    h_max: int
    factor: tuple[tuple[int, ...], ...]
    trivial: bool = False

    @property
    def k(self) -> int:
        return len(self.min_face)

    def labeling(self):
        return self.apex, self.min_face, self.zero_set

    def to_json(self) -> dict:
        return {
            "w": list(self.w),
            "apex": self.apex,
            "min_face": list(self.min_face),
            "factor_vertices": [list(f) for f in self.factor],
            "h_min": self.h_min,
            "h_max": self.h_max,
            "trivial": self.trivial,
        }

    @classmethod
    def from_json(cls, data: dict, P: FanoSimplex) -> "MutationMove":
        move = move_for_partition(P, int(data["apex"]), tuple(data["min_face"]))
        if move is None:
            raise MutationError("partition admits no simplex mutation")
        if tuple(data["w"]) != move.w:
            raise MutationError(f"w {data['w']} does not match the partition (expected {list(move.w)})")
        return move


def move_for_partition(P: FanoSimplex, apex: int, min_face: Sequence[int]) -> MutationMove | None:
    """The simplex mutation with the given apex and min-face, if it exists."""
    verts = P.vertices
    n = P.dim
    S = tuple(min_face)
    if len(S) < 2 or apex in S or len(set(S)) != len(S):
        return None
    Z = tuple(i for i in range(n + 1) if i != apex and i not in S)
    anchor = verts[S[0]]
    rows = [list(verts[z]) for z in Z] + [list(geo._sub(verts[j], anchor)) for j in S[1:]]
    w = la.kernel_vector(rows)
    if la.pair(w, verts[apex]) < 0:
        w = tuple(-x for x in w)
    h_max = la.pair(w, verts[apex])
    h_min = la.pair(w, anchor)
    assert h_max > 0 > h_min
    diffs = [geo._sub(verts[j], anchor) for j in S[1:]]
    if any(x % h_min for d in diffs for x in d):
        return None
    F = (tuple(0 for _ in range(n)),) + tuple(tuple(x // -h_min for x in d) for d in diffs)
    lam = P.weights
    trivial = sum(lam[i] for i in S) == lam[apex]
    return MutationMove(apex, S, Z, w, h_min, h_max, F, trivial)


def find_simplex_mutations(P: FanoSimplex) -> list[MutationMove]:
    """All simplex-to-simplex mutations of P, one per (apex, min-face) partition.

    Each partition pins the height function to a line; the move exists iff
    the divisibility condition holds.  Sorted by (apex, min_face).
    """
    n = P.dim
    out = []
    for apex in range(n + 1):
        others = [i for i in range(n + 1) if i != apex]
        for k in range(2, n + 1):
            for S in combinations(others, k):
                move = move_for_partition(P, apex, S)
                if move is not None:
                    out.append(move)
    return out


def scan_dual_vectors(P: FanoSimplex, bound: int) -> set[tuple]:
    """Brute-force oracle: every primitive w with |w_i| <= bound meeting the
    simplex mutation conditions, as ``(w, apex, sorted min_face)`` triples."""
    n = P.dim
    found = set()
    for w in product(range(-bound, bound + 1), repeat=n):
        if not la.is_primitive(w):
            continue
        hs = [la.pair(w, v) for v in P.vertices]
        hmax, hmin = max(hs), min(hs)
        top = [i for i, h in enumerate(hs) if h == hmax]
        bottom = [i for i, h in enumerate(hs) if h == hmin]
        if len(top) != 1 or len(bottom) < 2:
            continue
        if any(h not in (hmax, hmin, 0) for h in hs):
            continue
        v1 = P.vertices[bottom[0]]
        if any((a - b) % hmin for i in bottom for a, b in zip(P.vertices[i], v1)):
            continue
        found.add((w, top[0], tuple(bottom)))
    return found


def mutate_simplex(P: FanoSimplex, move: MutationMove) -> FanoSimplex:
    """Closed-form image: min-face vertices other than the anchor move to
    v_apex + (h_max/|h_min|)(v_i - v_anchor); all others stay put."""
    verts = list(P.vertices)
    anchor = P.vertices[move.min_face[0]]
    apex = P.vertices[move.apex]
    for i in move.min_face[1:]:
        d = geo._sub(P.vertices[i], anchor)
        if any(x % move.h_min for x in d):
            raise AssertionError("move does not satisfy the divisibility condition")
        verts[i] = tuple(a + move.h_max * (x // -move.h_min) for a, x in zip(apex, d))
    return validate_fano(verts)


def inverse_move(move: MutationMove, Q: FanoSimplex) -> MutationMove:
    """The move on Q = mutate_simplex(P, move) that maps back onto P exactly."""
    S = (move.apex,) + move.min_face[1:]
    back = move_for_partition(Q, move.min_face[0], S)
    if back is None:
        raise AssertionError("inverse move does not exist")
    return back


@dataclass(frozen=True)
class WeightPrediction:
    raw: tuple[int, ...]
    d: int
    forced_d: Fraction

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(x // self.d for x in self.raw)

    def multiplicity_ratio(self) -> Fraction:
        """mult(X)/mult(Y) = forced_d / d."""
        return self.forced_d / self.d


def predict_weights(weights: Sequence[int], apex: int, min_face: Sequence[int],
                    preserve_multiplicity: bool = False) -> WeightPrediction:
    """Weights after mutating, in the vertex positions used by :func:`mutate_simplex`.

    The apex takes lam0*lam_anchor, the anchor (sum of min-face weights)^2, the
    other min-face vertices lam0*lam_i and the zero set lam_i*sum.
    """
    lam = tuple(weights)
    S = tuple(min_face)
    k = len(S)
    lam0 = lam[apex]
    s = sum(lam[i] for i in S)
    raw = []
    for i, x in enumerate(lam):
        if i == apex:
            raw.append(lam0 * lam[S[0]])
        elif i == S[0]:
            raw.append(s * s)
        elif i in S:
            raw.append(lam0 * x)
        else:
            raw.append(x * s)
    d = la.gcd_list(raw)
    forced = Fraction(lam0 ** (k - 1)) / Fraction(s) ** (k - 2)
    if preserve_multiplicity:
        if forced.denominator != 1:
            raise MutationError("mutation cannot preserve multiplicity")
        d_forced = int(forced)
        if d_forced != d:
            raise MutationError("mutation cannot preserve multiplicity")
        return WeightPrediction(tuple(raw), d_forced, forced)
    return WeightPrediction(tuple(raw), d, forced)


def edge_divisibility_holds(lam0: int, lam1: int, lam2: int) -> bool:
    """Necessary divisibility for a nontrivial wps-to-wps edge mutation."""
    return (lam1 + lam2) ** 2 % lam0 == 0 and lam0 % gcd(lam1, lam2) == 0


def height_ratio_matches(move: MutationMove, weights: Sequence[int]) -> bool:
    s = sum(weights[i] for i in move.min_face)
    return Fraction(move.h_max, -move.h_min) == Fraction(s, weights[move.apex])
