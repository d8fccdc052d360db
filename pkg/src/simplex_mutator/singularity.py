"""Canonical / terminal / Gorenstein tests for fake weighted projective spaces.

Two independent routes: lattice points of the simplex itself, and the
fractional-part criterion on the weights of a weighted projective space.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import polytope as geo
from .simplex import FanoSimplex, WeightSystem, dual_polytope

DEFAULT_MAX_H = 10**6


class ResourceLimitError(RuntimeError):
    pass


def max_h() -> int:
    return int(os.environ.get("SIMPLEX_MUTATOR_MAX_H", DEFAULT_MAX_H))


@dataclass(frozen=True)
class SingularityReport:
    """Flags are None when a partial kappa scan could not decide them."""

    is_canonical: bool | None
    is_terminal: bool | None
    is_gorenstein: bool | None
    witness_kappa: int | None = None
    witness_point: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.is_terminal and self.is_canonical is False:
            raise AssertionError("terminal but not canonical")

    def to_json(self) -> dict:
        return {
            "canonical": self.is_canonical,
            "terminal": self.is_terminal,
            "gorenstein": self.is_gorenstein,
            "witness_kappa": self.witness_kappa,
        }


def classify_polytope(P: FanoSimplex) -> SingularityReport:
    """Classify via lattice points of P and integrality of P*.

    canonical: the origin is the only interior lattice point.
    terminal: the only lattice points are the vertices and the origin.
    Gorenstein: every facet functional is integral.
    """
    pts = P.lattice_points()
    origin = tuple(0 for _ in range(P.dim))
    ineqs = P.facet_inequalities()
    interior = [p for p in pts if p != origin and geo.contains(ineqs, p, strict=True)]
    verts = set(P.vertices)
    extra = [p for p in pts if p != origin and p not in verts]
    gorenstein = dual_polytope(P).is_lattice_polytope()
    witness = interior[0] if interior else (extra[0] if extra else None)
    return SingularityReport(not interior, not extra, gorenstein, None, witness)


def sum_of_fractional_parts(weights: Sequence[int], kappa: int) -> Fraction:
    """sum_i {lambda_i kappa / h} as an exact rational."""
    h = sum(weights)
    return sum((Fraction((x * kappa) % h, h) for x in weights), Fraction(0))


def classify_weights(ws: WeightSystem | Sequence[int], kappas: Iterable[int] | None = None,
                     limit: int | None = None) -> SingularityReport:
    """Classify a weighted projective space by the fractional-part criterion.

    canonical iff every kappa in 2..h-2 gives a sum in {1..n-1}; terminal iff
    it lies in {2..n-1}.  For h < 4 the range is empty and the space is
    terminal.  With ``kappas`` only those values are scanned; flags that the
    partial scan cannot settle come back as None.  Full scans are refused
    above ``limit`` (default SIMPLEX_MUTATOR_MAX_H or 10**6).
    """
    if not isinstance(ws, WeightSystem):
        ws = WeightSystem(tuple(ws))
    if ws.multiplicity != 1:
        raise ValueError("the weight criterion is only available for multiplicity one")
    lam = ws.weights
    n = ws.dim
    h = ws.h
    gorenstein = all(h % x == 0 for x in lam)
    partial = kappas is not None
    if not partial:
        if h > (limit if limit is not None else max_h()):
            raise ResourceLimitError(f"h = {h} exceeds the kappa-scan limit")
        kappas = range(2, h - 1)
    first_noncanonical = None
    first_nonterminal = None
    for kappa in sorted(kappas):
        # h * (sum of fractional parts), kept in integers
        s = sum((x * kappa) % h for x in lam)
        if first_noncanonical is None and not (h <= s <= (n - 1) * h):
            first_noncanonical = kappa
        if first_nonterminal is None and not (2 * h <= s <= (n - 1) * h):
            first_nonterminal = kappa
        if first_noncanonical is not None:
            break
    canonical = first_noncanonical is None
    terminal = first_nonterminal is None
    if partial:
        canonical = False if not canonical else None
        terminal = False if not terminal else None
    witness = first_noncanonical if first_noncanonical is not None else first_nonterminal
    return SingularityReport(canonical, terminal, gorenstein, witness)


def complementary_check(weights: Sequence[int], kappa: int) -> bool:
    """{x k/h} + {x (h-k)/h} summed equals the count of i with h not dividing lam_i k."""
    h = sum(weights)
    lhs = sum_of_fractional_parts(weights, kappa) + sum_of_fractional_parts(weights, h - kappa)
    return lhs == sum(1 for x in weights if (x * kappa) % h)
