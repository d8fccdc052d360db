"""Fano simplices, their weights and multiplicity, duals and lattice points."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import gcd, prod
from typing import Sequence

from . import lattice as la
from . import polytope as geo


class FanoError(ValueError):
    """Rejected simplex; ``clause`` names the violated condition."""

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        super().__init__(f"{clause}: {detail}" if detail else clause)


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple[int, ...]
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(x) for x in self.weights))
        if len(self.weights) < 2 or any(x <= 0 for x in self.weights):
            raise ValueError(f"weights must be positive integers: {self.weights}")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def dim(self) -> int:
        return len(self.weights) - 1

    @property
    def h(self) -> int:
        return sum(self.weights)

    def is_reduced(self) -> bool:
        return la.gcd_list(self.weights) == 1

    def is_well_formed(self) -> bool:
        w = self.weights
        return all(la.gcd_list(w[:i] + w[i + 1:]) == 1 for i in range(len(w)))

    def key(self) -> tuple[tuple[int, ...], int]:
        return tuple(sorted(self.weights)), self.multiplicity

    def to_json(self) -> dict:
        return {"weights": sorted(self.weights), "multiplicity": self.multiplicity}

    @classmethod
    def from_json(cls, data: dict) -> "WeightSystem":
        return cls(tuple(data["weights"]), int(data.get("multiplicity", 1)))


@dataclass(frozen=True)
class RationalPolytope:
    dim: int
    vertices: tuple[tuple[Fraction, ...], ...]

    def inequalities(self):
        return geo.facets(self.vertices)

    def is_lattice_polytope(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)


@dataclass(frozen=True)
class FanoSimplex:
    """An n-simplex with primitive vertices and the origin in its interior.

    Build through :func:`validate_fano`; weights and multiplicity are derived
    eagerly so the object is read-only afterwards.
    """

    vertices: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...] = field(compare=False)
    multiplicity: int = field(compare=False)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def weight_system(self) -> WeightSystem:
        return WeightSystem(self.weights, self.multiplicity)

    def facet_inequalities(self):
        """``a.x <= b`` for each facet; the i-th omits vertex i."""
        out = []
        for i in range(len(self.vertices)):
            u = facet_functional(self, i)
            # u(v) >= -1 on P  <=>  (-u).v <= 1
            out.append((tuple(-x for x in u), Fraction(1)))
        return out

    def lattice_points(self) -> list[tuple[int, ...]]:
        return geo.lattice_points(self.facet_inequalities(), self.dim)

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices]}


def _cofactor_dets(vertices) -> list[int]:
    n = len(vertices) - 1
    out = []
    for i in range(n + 1):
        M = la.transpose([vertices[j] for j in range(n + 1) if j != i])
        out.append((-1) ** i * la.det(M))
    return out


def validate_fano(vertices: Sequence[Sequence[int]]) -> FanoSimplex:
    """Check the Fano conditions and return the simplex.

    Raises FanoError with clause ``degenerate``, ``origin-not-interior`` or
    ``non-primitive-vertex``.
    """
    verts = tuple(tuple(int(x) for x in v) for v in vertices)
    if not verts:
        raise FanoError("degenerate", "no vertices")
    n = len(verts[0])
    if len(verts) != n + 1 or any(len(v) != n for v in verts):
        raise FanoError("degenerate", f"need {n + 1} points in dimension {n}")
    # Cramer: sum_i c_i v_i = 0 with c_i the signed maximal minors
    c = _cofactor_dets(verts)
    if not any(c):
        raise FanoError("degenerate", "vertices are affinely dependent")
    if any(x == 0 for x in c) or not (all(x > 0 for x in c) or all(x < 0 for x in c)):
        # if some minor vanishes the vertices are still affinely independent
        # only when the origin lies on the boundary or outside
        if la.rank([list(v) + [1] for v in verts]) < n + 1:
            raise FanoError("degenerate", "vertices are affinely dependent")
        raise FanoError("origin-not-interior")
    for v in verts:
        if not la.is_primitive(v):
            raise FanoError("non-primitive-vertex", str(v))
    g = la.gcd_list(c)
    weights = tuple(abs(x) // g for x in c)
    assert all(sum(w * v[k] for w, v in zip(weights, verts)) == 0 for k in range(n))
    return FanoSimplex(verts, weights, multiplicity_of_vertices(verts))


def multiplicity_of_vertices(verts) -> int:
    return la.sublattice_index(verts)


def weights_of(P: FanoSimplex) -> WeightSystem:
    return WeightSystem(P.weights, P.multiplicity)


def multiplicity(P: FanoSimplex) -> int:
    return P.multiplicity


def simplex_from_weights(ws: WeightSystem | Sequence[int]) -> FanoSimplex:
    """A multiplicity-one simplex whose i-th vertex carries weight ``ws[i]``.

    The vertices are the images of the standard basis under an isomorphism
    Z^{n+1} / Z.lambda -> Z^n, put into Hermite normal form.
    """
    if not isinstance(ws, WeightSystem):
        ws = WeightSystem(tuple(ws))
    lam = list(ws.weights)
    if ws.multiplicity != 1:
        raise ValueError("only multiplicity one is constructible from weights")
    if not ws.is_reduced() or not ws.is_well_formed():
        raise FanoError("non-primitive-vertex", f"weights {tuple(lam)} are not well-formed")
    U, D, _ = la.smith_normal_form([[x] for x in lam])
    assert D[0][0] == 1
    # rows 1..n of U kill lambda and map Z^{n+1} onto Z^n
    M = [row for row in U[1:]]
    H, _ = la.hermite_normal_form(M)
    verts = la.transpose(H)
    P = validate_fano(verts)
    assert P.weights == tuple(lam) and P.multiplicity == 1
    return P


def canonical_form(P: FanoSimplex) -> FanoSimplex:
    """Same simplex in Hermite-normal coordinates (vertex order kept)."""
    H, _ = la.hermite_normal_form(la.transpose(P.vertices))
    return FanoSimplex(tuple(tuple(c) for c in la.transpose(H)), P.weights, P.multiplicity)


def degree(ws: WeightSystem | FanoSimplex) -> Fraction:
    """Anticanonical degree (sum)^n / (product * multiplicity)."""
    if isinstance(ws, FanoSimplex):
        ws = weights_of(ws)
    n = ws.dim
    return Fraction(sum(ws.weights) ** n, prod(ws.weights) * ws.multiplicity)


def facet_functional(P: FanoSimplex, i: int) -> tuple[Fraction, ...]:
    """The u in M_Q with u(v_j) = -1 for every vertex j != i."""
    rows = [list(v) for j, v in enumerate(P.vertices) if j != i]
    return la.solve(rows, [-1] * len(rows))


def dual_polytope(P) -> RationalPolytope:
    """Polar dual {u : u(v) >= -1 on P} as a vertex list.

    Accepts a FanoSimplex or any full-dimensional vertex list containing the
    origin in its interior.
    """
    if isinstance(P, FanoSimplex):
        verts = tuple(facet_functional(P, i) for i in range(len(P.vertices)))
        return RationalPolytope(P.dim, verts)
    pts = [tuple(v) for v in P]
    out = []
    for a, b in geo.facets(pts):
        if b <= 0:
            raise ValueError("origin is not interior")
        # a.x <= b  <=>  (-a/b).x >= -1
        out.append(tuple(Fraction(-x) / b for x in a))
    return RationalPolytope(len(pts[0]), tuple(sorted(out)))


def _dual_inequalities(P: FanoSimplex, k: int):
    # k P* = {u : u(v_i) >= -k}  <=>  (-v_i).u <= k; substituting u = B u'
    # with B unimodular keeps the count and makes kP* rounder to enumerate
    B = la.lll_reduce_columns(P.vertices)
    rows = [la.matvec(la.transpose(B), v) for v in P.vertices]
    return [(tuple(-x for x in v), Fraction(k)) for v in rows]


def lattice_point_count(Q, k: int, dual: bool = False) -> int:
    """Number of lattice points in the dilation kQ.

    ``Q`` is a RationalPolytope or FanoSimplex; with ``dual=True`` and a
    FanoSimplex this counts k P* directly from the vertex inequalities.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1
    if isinstance(Q, FanoSimplex):
        if dual:
            return geo.count_lattice_points(_dual_inequalities(Q, k), Q.dim)
        ineqs = [(a, b * k) for a, b in Q.facet_inequalities()]
        return geo.count_lattice_points(ineqs, Q.dim)
    ineqs = [(a, b * k) for a, b in Q.inequalities()]
    return geo.count_lattice_points(ineqs, Q.dim)


def dual_lattice_point_count(P: FanoSimplex, k: int) -> int:
    return lattice_point_count(P, k, dual=True)


def unimodular_map(P: FanoSimplex, Q: FanoSimplex, order: Sequence[int]):
    """Integer matrix A with A v_i = w_order[i] and det A = +-1, or None."""
    n = P.dim
    basis = _independent_subset(P.vertices, n)
    B = la.transpose([P.vertices[i] for i in basis])
    C = la.transpose([Q.vertices[order[i]] for i in basis])
    Binv = la.inverse(B)
    A = [[sum(Fraction(C[r][k]) * Binv[k][c] for k in range(n)) for c in range(n)] for r in range(n)]
    if any(x.denominator != 1 for row in A for x in row):
        return None
    A = [[int(x) for x in row] for row in A]
    if abs(la.det(A)) != 1:
        return None
    if any(la.matvec(A, P.vertices[i]) != Q.vertices[order[i]] for i in range(n + 1)):
        return None
    return A


def _independent_subset(verts, n):
    for idx in combinations(range(len(verts)), n):
        if la.det(la.transpose([verts[i] for i in idx])) != 0:
            return idx
    raise AssertionError("simplex is degenerate")


def simplex_equivalent(P: FanoSimplex, Q: FanoSimplex) -> bool:
    """True iff some GL_n(Z) map sends the vertex set of P onto that of Q."""
    if P.dim != Q.dim:
        return False
    if sorted(P.weights) != sorted(Q.weights) or P.multiplicity != Q.multiplicity:
        return False
    m = len(P.vertices)
    for order in permutations(range(m)):
        # a lattice isomorphism must preserve the weight attached to each vertex
        if any(P.weights[i] != Q.weights[order[i]] for i in range(m)):
            continue
        if unimodular_map(P, Q, order) is not None:
            return True
    return False


def from_json(data: dict) -> FanoSimplex:
    verts = data["vertices"]
    if "dim" in data and any(len(v) != int(data["dim"]) for v in verts):
        raise FanoError("degenerate", "vertex length does not match dim")
    return validate_fano(verts)
