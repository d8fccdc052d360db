"""Sylvester numbers, maximal-degree weight towers and mutation graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Callable, Sequence

from sympy import divisors, primefactors

from . import lattice as la
from .mutation import find_simplex_mutations, move_for_partition, mutate_simplex, predict_weights
from .simplex import FanoSimplex, WeightSystem, simplex_from_weights
from .singularity import ResourceLimitError, classify_weights, max_h, sum_of_fractional_parts

VARIANTS = ("canonical", "terminal")
MAX_TREE_DEPTH = 4


@dataclass(frozen=True)
class SylvesterCache:
    y: tuple[int, ...]
    t: tuple[int, ...]


def sylvester_numbers(count: int) -> SylvesterCache:
    """y_0 = 2, y_k = 1 + y_0 ... y_{k-1}; t_k = y_k - 1."""
    if count < 1:
        raise ValueError("count must be at least 1")
    y = [2]
    while len(y) < count:
        y.append(1 + prod(y))
    return SylvesterCache(tuple(y), tuple(v - 1 for v in y))


def _check_variant(variant: str):
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def _scale(variant: str) -> int:
    return 2 if variant == "canonical" else 1


def max_degree_wps(n: int, variant: str = "canonical") -> WeightSystem:
    """(1, 1, c t_{n-1}/y_{n-2}, ..., c t_{n-1}/y_0) with c = 2 (canonical) or 1 (terminal)."""
    _check_variant(variant)
    lowest = 3 if variant == "canonical" else 4
    if n < lowest:
        raise ValueError(f"{variant} variant needs n >= {lowest}")
    s = sylvester_numbers(n)
    top = _scale(variant) * s.t[n - 1]
    ws = WeightSystem((1, 1) + tuple(top // s.y[i] for i in range(n - 2, -1, -1)))
    assert ws.is_well_formed()
    return ws


@dataclass(frozen=True)
class TowerState:
    """Weights of the m-th member of tower a.

    ``ks[j]`` is the Sylvester index attached to position j + 3; ``previous``
    holds the weights at m - 1 (None at the base).
    """

    n: int
    variant: str
    a: int
    m: int
    weights: tuple[int, ...]
    ks: tuple[int, ...]
    previous: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def h(self) -> int:
        return sum(self.weights)

    def weight_system(self) -> WeightSystem:
        return WeightSystem(self.weights)


def tower_base(n: int, variant: str, a: int) -> TowerState:
    _check_variant(variant)
    if n < 3 or not 0 <= a <= n - 2:
        raise ValueError(f"need n >= 3 and 0 <= a <= n-2 (got n={n}, a={a})")
    s = sylvester_numbers(n)
    top = _scale(variant) * s.t[n - 1]
    ks = tuple(k for k in range(n - 2, -1, -1) if k != a)
    lam = (1, top // s.y[a], 1) + tuple(top // s.y[k] for k in ks)
    return TowerState(n, variant, a, 0, lam, ks)


def tower_step(state: TowerState) -> TowerState:
    """Next member: (l2, l1, (l1+l2)^2/l0, l_i (l1+l2)/l0 for i >= 3)."""
    l0, l1, l2 = state.weights[:3]
    s = l1 + l2
    if (s * s) % l0 or any((x * s) % l0 for x in state.weights[3:]):
        raise AssertionError(f"inexact tower division at m={state.m}: {state.weights}")
    lam = (l2, l1, s * s // l0) + tuple(x * s // l0 for x in state.weights[3:])
    nxt = TowerState(state.n, state.variant, state.a, state.m + 1, lam, state.ks, state.weights)
    if nxt.h * l0 != s * state.h:
        raise AssertionError("weight sum recursion violated")
    if not weight_sum_relation_holds(nxt):
        raise AssertionError(f"weight sum does not match y_k * lambda at m={nxt.m}")
    return nxt


def weight_sum_relation_holds(state: TowerState) -> bool:
    """y_{k_i} lambda_i h0 = c t_{n-1} h for i >= 3, with h0 the base weight sum.

    In the canonical variant h0 = 2 t_{n-1}, so this reads h = y_{k_i} lambda_i;
    the terminal base sums to t_{n-1} + 1 and the plain equality fails.
    """
    s = sylvester_numbers(state.n)
    c = _scale(state.variant) * s.t[state.n - 1]
    h0 = sum(tower_base(state.n, state.variant, state.a).weights)
    return all(s.y[k] * x * h0 == c * state.h for k, x in zip(state.ks, state.weights[3:]))


def tower_state(n: int, variant: str, a: int, m: int) -> TowerState:
    state = tower_base(n, variant, a)
    for _ in range(m):
        state = tower_step(state)
    return state


def tower(n: int, variant: str, a: int, m_max: int) -> list[TowerState]:
    out = [tower_base(n, variant, a)]
    for _ in range(m_max):
        out.append(tower_step(out[-1]))
    return out


@dataclass(frozen=True)
class KappaWitness:
    kappa: int
    value: Fraction
    verdict: str | None
    in_range: bool


def kappa_witness(state: TowerState) -> KappaWitness:
    """Evaluate the fractional sum at the kappa that rules out the singularity class.

    canonical: kappa = h - (l1 + l2 of the previous member), fails when the
    sum exceeds n - 1.  terminal: kappa = h - (previous h), fails when the sum
    is below 2.
    """
    if state.m < 1 or state.previous is None:
        raise ValueError("kappa witnesses need m >= 1")
    h = state.h
    prev = state.previous
    if state.variant == "canonical":
        kappa = h - (prev[1] + prev[2])
        value = sum_of_fractional_parts(state.weights, kappa)
        verdict = "not canonical" if value > state.n - 1 else None
    else:
        kappa = h - sum(prev)
        value = sum_of_fractional_parts(state.weights, kappa)
        verdict = "not terminal" if value < 2 else None
    return KappaWitness(kappa, value, verdict, 2 <= kappa <= h - 2)


# ---------------------------------------------------------------- claims


@dataclass
class ClaimResult:
    name: str
    description: str
    checked: int = 0
    counterexample: str | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def fail(self, detail: str):
        if self.counterexample is None:
            self.counterexample = detail


def _strip(g: int, *others: int) -> int:
    """Largest divisor of g sharing no prime with any of ``others``."""
    for o in others:
        c = gcd(g, o)
        while c > 1:
            g //= c
            c = gcd(g, o)
    return g


def _has_prime_dividing_all_but(divide: Sequence[int], avoid: Sequence[int]) -> bool:
    """Is there a prime dividing every entry of ``divide`` and none of ``avoid``?"""
    return _strip(la.gcd_list(divide), *avoid) > 1


def _sylvester_claims(n: int) -> list[ClaimResult]:
    s = sylvester_numbers(n + 1)
    plus = ClaimResult("sylvester_divisibility", "y_i | t_k/y_i + 1 and y_i does not divide 2 t_k/y_i + 1")
    ident = ClaimResult("sylvester_identities", "pairwise coprime, sum of 1/y_i = (t_k - 1)/t_k")
    for k in range(1, n + 1):
        for i in range(k):
            plus.checked += 1
            q = s.t[k] // s.y[i]
            if s.t[k] % s.y[i] or (q + 1) % s.y[i] or (2 * q + 1) % s.y[i] == 0:
                plus.fail(f"k={k}, i={i}")
        ident.checked += 1
        if sum(Fraction(1, s.y[i]) for i in range(k)) != Fraction(s.t[k] - 1, s.t[k]):
            ident.fail(f"reciprocal sum at k={k}")
    for i in range(n + 1):
        for j in range(i):
            if gcd(s.y[i], s.y[j]) != 1:
                ident.fail(f"gcd(y_{j}, y_{i}) != 1")
    return [plus, ident]


def verify_appendix_claims(n: int, variant: str, m_max: int) -> list[ClaimResult]:
    """Check the divisibility, coprimality and witness claims on every tower.

    Every a in 0..n-2 and every m <= m_max is checked with exact integers.
    Existence-of-prime claims are decided without factoring: strip from the
    relevant gcd every prime shared with the excluded weights and test > 1.
    """
    _check_variant(variant)
    if not (4 <= n <= 6) or not (0 <= m_max <= 4):
        raise ValueError("supported range is 4 <= n <= 6, m_max <= 4")
    canonical = variant == "canonical"
    y = sylvester_numbers(n).y
    t_top = sylvester_numbers(n).t[n - 1]
    c = _scale(variant) * t_top
    results = _sylvester_claims(n)

    def claim(name, desc):
        r = ClaimResult(name, desc)
        results.append(r)
        return r

    growth = claim("monotone_growth", "each weight is nondecreasing in m and lambda_2 strictly increases")
    coprime = claim("coprime_012", "lambda_0, lambda_1, lambda_2 pairwise coprime")
    prime_a = claim("prime_off_01", "m >= 1: a prime divides lambda_i for i >= 2 but not lambda_0, lambda_1")
    prime_b = claim("prime_off_12", "m >= 2: a prime divides lambda_0 and lambda_i for i >= 3 but not lambda_1, lambda_2")
    sep = claim("separating_divisor", "for each i >= 3 some k > 1, fixed over m, avoids lambda_0, lambda_2, lambda_i and divides the rest")
    prime_c = claim("prime_lambda1", "a prime, fixed over m, divides lambda_1 and not lambda_0 + lambda_2")
    hsum = claim("weight_sum", "base weight sum, h recursion, and h proportional to y_{k_i} lambda_i for i >= 3"
                 + (" (equal in the canonical variant)" if canonical else ""))
    witness = claim("kappa_witness", "m >= 1: kappa in 2..h-2 and the fractional sum "
                    + ("exceeds n-1" if canonical else "is below 2"))
    if canonical:
        parity = claim("parity", "lambda_0, lambda_2 odd; lambda_1 and lambda_i (i >= 3) even")
        yb = claim("lambda2_mod_yb", "y_b | lambda_2 - 1 for b != a")
        ratio = claim("small_ratio", "m >= 1: lambda_0 lambda_1 / h < 1/(2 t_{n-1})")
        yk = claim("lambda2_minus_lambda0", "y_{k_i} | lambda_2 - lambda_0 for i >= 3")
        apex = claim("apex_fraction", "m >= 1: {kappa lambda_0/h} = 1 - 1/(2t) (m odd), 1 - 1/(2t) - 1/y_a (m even)")
    else:
        zero = claim("witness_zero_terms", "m >= 1: the lambda_2 and lambda_i (i >= 3) terms of the witness sum vanish")
        if n >= 5:
            pair_p = claim("prime_1ij", "for distinct i, j >= 3 a prime, fixed over m, divides lambda_1, lambda_i, lambda_j and not lambda_0, lambda_2")

    for a in range(n - 1):
        states = tower(n, variant, a, m_max)
        where = lambda st: f"a={a}, m={st.m}"
        for st in states:
            lam = st.weights
            l0, l1, l2 = lam[:3]
            h = st.h
            coprime.checked += 1
            if gcd(l0, l1) != 1 or gcd(l0, l2) != 1 or gcd(l1, l2) != 1:
                coprime.fail(where(st))
            hsum.checked += 1
            if st.m == 0 and h != (c if canonical else c + 1):
                hsum.fail(where(st))
            if st.m >= 1:
                pv = st.previous
                if h * pv[0] != (pv[1] + pv[2]) * sum(pv):
                    hsum.fail(where(st))
            if not weight_sum_relation_holds(st):
                hsum.fail(where(st))
            if canonical and any(h != y[k] * x for k, x in zip(st.ks, lam[3:])):
                hsum.fail(where(st))
            if st.m >= 1:
                prime_a.checked += 1
                if not _has_prime_dividing_all_but(lam[2:], (l0, l1)):
                    prime_a.fail(where(st))
                w = kappa_witness(st)
                witness.checked += 1
                if not w.in_range or w.verdict is None:
                    witness.fail(f"{where(st)}: kappa={w.kappa}, sum={w.value}")
            if st.m >= 2:
                prime_b.checked += 1
                if not _has_prime_dividing_all_but((l0,) + lam[3:], (l1, l2)):
                    prime_b.fail(where(st))
            if canonical:
                parity.checked += 1
                if l0 % 2 == 0 or l2 % 2 == 0 or l1 % 2 or any(x % 2 for x in lam[3:]):
                    parity.fail(where(st))
                for b in range(n - 1):
                    if b != a:
                        yb.checked += 1
                        if (l2 - 1) % y[b]:
                            yb.fail(f"{where(st)}, b={b}")
                for k in st.ks:
                    yk.checked += 1
                    if (l2 - l0) % y[k]:
                        yk.fail(f"{where(st)}, k={k}")
                if st.m >= 1:
                    ratio.checked += 1
                    if not Fraction(l0 * l1, h) < Fraction(1, c):
                        ratio.fail(where(st))
                    kappa = kappa_witness(st).kappa
                    want = 1 - Fraction(1, c) - (Fraction(1, y[a]) if st.m % 2 == 0 else 0)
                    apex.checked += 1
                    if Fraction((kappa * l0) % h, h) != want:
                        apex.fail(where(st))
            elif st.m >= 1:
                kappa = kappa_witness(st).kappa
                zero.checked += 1
                if any((kappa * x) % h for x in (l2,) + lam[3:]):
                    zero.fail(where(st))

        for prev, cur in zip(states, states[1:]):
            growth.checked += 1
            if any(q < p for p, q in zip(prev.weights, cur.weights)) or cur.weights[2] <= prev.weights[2]:
                growth.fail(f"a={a}, m={cur.m}")

        # claims with a witness fixed across all m
        l1 = states[0].weights[1]
        prime_c.checked += 1
        if not any(all(st.weights[1] % p == 0 and (st.weights[0] + st.weights[2]) % p for st in states)
                   for p in primefactors(l1)):
            prime_c.fail(f"a={a}")
        for i in range(3, n + 1):
            sep.checked += 1
            rest = [j for j in range(1, n + 1) if j not in (2, i)]
            G = la.gcd_list(st.weights[j] for st in states for j in rest)
            ok = any(
                all(st.weights[j] % k for st in states for j in (0, 2, i))
                for k in divisors(G) if k > 1
            )
            if not ok:
                sep.fail(f"a={a}, i={i}")
        if not canonical and n >= 5:
            for i in range(3, n + 1):
                for j in range(i + 1, n + 1):
                    pair_p.checked += 1
                    G = la.gcd_list(st.weights[x] for st in states for x in (1, i, j))
                    if not any(all(st.weights[0] % p and st.weights[2] % p for st in states)
                               for p in primefactors(G)):
                        pair_p.fail(f"a={a}, i={i}, j={j}")
    return results


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True)
class GraphEdge:
    source: tuple
    target: tuple
    k: int
    d: int
    move: dict


@dataclass
class MutationGraph:
    """Nodes keyed by (sorted weights, multiplicity); undirected edges."""

    n: int
    variant: str
    depth: int
    root: tuple
    nodes: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)

    def depth_counts(self) -> list[int]:
        counts = [0] * (self.depth + 1)
        for info in self.nodes.values():
            counts[info["depth"]] += 1
        return counts

    def neighbours(self, key) -> set:
        out = set()
        for e in self.edges:
            if e.source == key:
                out.add(e.target)
            elif e.target == key:
                out.add(e.source)
        return out

    def _ordered(self):
        keys = sorted(self.nodes, key=lambda k: (self.nodes[k]["depth"], k))
        return {k: f"n{i}" for i, k in enumerate(keys)}

    def to_dot(self) -> str:
        ids = self._ordered()
        lines = [f"graph mutations_{self.variant}_{self.n} {{"]
        for key, ident in ids.items():
            label = ",".join(map(str, key[0]))
            if key[1] != 1:
                label += f" / {key[1]}"
            lines.append(f'  {ident} [label="{label}"];')
        for e in sorted(self.edges, key=lambda e: (ids[e.source], ids[e.target])):
            lines.append(f'  {ids[e.source]} -- {ids[e.target]} [label="k={e.k},d={e.d}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self, classify: bool = True) -> dict:
        ids = self._ordered()
        nodes = []
        for key, ident in ids.items():
            entry = {"id": ident, "weights": list(key[0]), "multiplicity": key[1],
                     "depth": self.nodes[key]["depth"]}
            if classify:
                try:
                    entry["singularity"] = classify_weights(WeightSystem(key[0])).to_json()
                except ResourceLimitError:
                    entry["singularity"] = None
            nodes.append(entry)
        edges = [{"source": ids[e.source], "target": ids[e.target], "k": e.k, "d": e.d, "move": e.move}
                 for e in sorted(self.edges, key=lambda e: (ids[e.source], ids[e.target]))]
        return {"n": self.n, "variant": self.variant, "depth": self.depth,
                "depth_counts": self.depth_counts(), "nodes": nodes, "edges": edges}


def _node_key(P: FanoSimplex) -> tuple:
    return tuple(sorted(P.weights)), P.multiplicity


def wps_neighbours(P: FanoSimplex):
    """Non-trivial moves from P landing on multiplicity one, with their images."""
    for move in find_simplex_mutations(P):
        if move.trivial:
            continue
        Q = mutate_simplex(P, move)
        if Q.multiplicity != 1:
            continue
        yield move, Q


def build_mutation_tree(n: int, variant: str, depth: int, check_shape: bool | None = None) -> MutationGraph:
    """Breadth-first exploration of weighted projective spaces reachable from
    the maximal-degree one by non-trivial mutations.

    For canonical n >= 4 and terminal n >= 5 the explored region is checked
    against the tower star-of-chains unless ``check_shape`` is False.
    """
    if depth < 0 or depth > MAX_TREE_DEPTH:
        raise ResourceLimitError(f"depth must be in 0..{MAX_TREE_DEPTH}")
    root_ws = max_degree_wps(n, variant)
    root = simplex_from_weights(tuple(sorted(root_ws.weights)))
    g = MutationGraph(n, variant, depth, _node_key(root))
    g.nodes[g.root] = {"depth": 0, "simplex": root}
    seen_edges = set()
    queue = deque([g.root])
    while queue:
        key = queue.popleft()
        info = g.nodes[key]
        if info["depth"] >= depth:
            continue
        P = info["simplex"]
        for move, Q in wps_neighbours(P):
            qkey = _node_key(Q)
            if qkey == key:
                continue
            pred = predict_weights(P.weights, move.apex, move.min_face)
            ekey = frozenset((key, qkey))
            if ekey not in seen_edges:
                seen_edges.add(ekey)
                g.edges.append(GraphEdge(key, qkey, move.k, pred.d, move.to_json()))
            if qkey not in g.nodes:
                g.nodes[qkey] = {"depth": info["depth"] + 1, "simplex": simplex_from_weights(qkey[0])}
                queue.append(qkey)
    if check_shape is None:
        check_shape = (variant == "canonical" and n >= 4) or (variant == "terminal" and n >= 5)
    if check_shape and not is_star_of_chains(g):
        raise AssertionError("explored graph is not the expected star of chains")
    return g


def is_star_of_chains(g: MutationGraph) -> bool:
    """Every node is a tower member at its depth and edges join consecutive members."""
    expected = {}
    for a in range(g.n - 1):
        for st in tower(g.n, g.variant, a, g.depth):
            expected.setdefault((tuple(sorted(st.weights)), 1), set()).add((a, st.m))
    if set(g.nodes) != set(expected):
        return False
    for key, info in g.nodes.items():
        if any(m != info["depth"] for _, m in expected[key]):
            return False
    for e in g.edges:
        ok = any(a1 == a2 and abs(m1 - m2) == 1
                 for a1, m1 in expected[e.source] for a2, m2 in expected[e.target])
        if not ok:
            return False
    root_degree = len(g.neighbours(g.root))
    if g.depth >= 1 and root_degree != g.n - 1:
        return False
    return all(len(g.neighbours(k)) <= 2 for k in g.nodes if k != g.root)


def tower_mutation_move(P: FanoSimplex):
    """The move realising one tower step on a simplex whose vertex i carries lambda_i."""
    return move_for_partition(P, 0, (2, 1))
