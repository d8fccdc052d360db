"""Deterministic test corpus of small Fano simplices and the checks run on it."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .mutation import find_simplex_mutations, inverse_move, mutate, mutate_simplex, predict_weights
from .simplex import (FanoError, FanoSimplex, WeightSystem, degree, dual_lattice_point_count,
                      simplex_from_weights, validate_fano)
from .singularity import classify_polytope, classify_weights

COORD_BOUND = 8
DEFAULT_SEED = 20240607


def _weight_built(n: int, max_sum: int, bound: int) -> list[FanoSimplex]:
    out = []
    for h in range(n + 1, max_sum + 1):
        for lam in combinations_with_replacement(range(1, h), n + 1):
            if sum(lam) != h:
                continue
            ws = WeightSystem(lam)
            if not ws.is_reduced() or not ws.is_well_formed():
                continue
            P = simplex_from_weights(ws)
            if max(abs(x) for v in P.vertices for x in v) <= bound:
                out.append(P)
    return out


def _random_fano(rng: random.Random, n: int, bound: int) -> FanoSimplex | None:
    verts = [tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(n + 1)]
    try:
        return validate_fano(verts)
    except FanoError:
        return None


def generate_corpus(seed: int = DEFAULT_SEED, random_per_dim: int = 60, bound: int = COORD_BOUND,
                    max_sum: dict | None = None) -> list[FanoSimplex]:
    """Fano simplices in dimensions 3 and 4 with coordinates in [-bound, bound].

    Weighted projective spaces are built from every well-formed weight system
    up to a weight-sum cap (kept when the Hermite-form realisation fits the
    bound); fake ones come from seeded random vertex draws.  The result is
    sorted, so it depends only on the arguments.
    """
    max_sum = max_sum or {3: 24, 4: 14}
    rng = random.Random(seed)
    seen = {}
    for n in (3, 4):
        for P in _weight_built(n, max_sum[n], bound):
            seen.setdefault(P.vertices, P)
        got = 0
        tries = 0
        while got < random_per_dim and tries < 200 * random_per_dim:
            tries += 1
            P = _random_fano(rng, n, bound)
            if P is not None and P.vertices not in seen:
                seen[P.vertices] = P
                got += 1
    return [seen[k] for k in sorted(seen, key=lambda v: (len(v), v))]


@dataclass
class Check:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail: str):
        self.checked += 1
        if not ok and len(self.failures) < 5:
            self.failures.append(detail)


def mutation_suite(corpus: list[FanoSimplex], dual_ks=(1, 2, 3), general_every: int = 0) -> list[Check]:
    """Degree, weight prediction, multiplicity ratio, edge-only multiplicity
    preservation, dual lattice counts and move inversion on every non-trivial move.

    With ``general_every = k > 0`` every k-th move is also re-run through the
    general hull-of-slices construction and compared vertex-for-vertex.
    """
    deg = Check("degree invariance")
    pred = Check("predicted weights")
    ratio = Check("multiplicity ratio")
    edge = Check("multiplicity-preserving moves are edge moves")
    dual = Check("dual lattice counts")
    inv = Check("inverse move")
    gen = Check("general construction agrees")
    count = 0
    for P in corpus:
        for move in find_simplex_mutations(P):
            if move.trivial:
                continue
            count += 1
            tag = f"{P.vertices} apex={move.apex} face={move.min_face}"
            Q = mutate_simplex(P, move)
            deg.record(degree(P) == degree(Q), tag)
            p = predict_weights(P.weights, move.apex, move.min_face)
            pred.record(p.weights == Q.weights, tag)
            ratio.record(p.multiplicity_ratio() == Fraction(P.multiplicity, Q.multiplicity), tag)
            if P.multiplicity == Q.multiplicity:
                edge.record(move.k == 2, tag)
            dual.record(all(dual_lattice_point_count(P, k) == dual_lattice_point_count(Q, k) for k in dual_ks), tag)
            back = inverse_move(move, Q)
            inv.record(mutate_simplex(Q, back).vertices == P.vertices, tag)
            if general_every and count % general_every == 0:
                R = mutate(P, move.w, move.factor)
                gen.record(sorted(R.vertices) == sorted(Q.vertices), tag)
    checks = [deg, pred, ratio, edge, dual, inv]
    if general_every:
        checks.append(gen)
    return checks


def singularity_suite(corpus: list[FanoSimplex], max_h: int = 10**4) -> list[Check]:
    agree = Check("polytope and weight classifiers agree")
    implies = Check("terminal implies canonical")
    for P in corpus:
        rp = classify_polytope(P)
        implies.record(not rp.is_terminal or rp.is_canonical, str(P.vertices))
        if P.multiplicity != 1 or sum(P.weights) > max_h:
            continue
        rw = classify_weights(WeightSystem(P.weights))
        same = (rp.is_canonical, rp.is_terminal, rp.is_gorenstein) == (rw.is_canonical, rw.is_terminal, rw.is_gorenstein)
        agree.record(same, f"{P.weights}: polytope {rp.to_json()} weights {rw.to_json()}")
    return [agree, implies]
