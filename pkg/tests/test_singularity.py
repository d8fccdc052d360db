from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from simplex_mutator.simplex import WeightSystem, dual_polytope, simplex_from_weights, validate_fano
from simplex_mutator.singularity import (ResourceLimitError, SingularityReport, classify_polytope,
                                         classify_weights, complementary_check, sum_of_fractional_parts)


def test_p1113(p1113):
    r = classify_polytope(p1113)
    assert (r.is_canonical, r.is_terminal, r.is_gorenstein) == (True, False, True)
    # the only non-vertex lattice point besides the origin, found by box scan
    assert r.witness_point == (0, 0, -1)
    w = classify_weights(WeightSystem((1, 1, 1, 3)))
    assert (w.is_canonical, w.is_terminal, w.is_gorenstein) == (True, False, True)
    assert w.witness_kappa == 2


def test_p1146():
    for r in (classify_polytope(simplex_from_weights((1, 1, 4, 6))), classify_weights(WeightSystem((1, 1, 4, 6)))):
        assert r.is_canonical and r.is_gorenstein and not r.is_terminal


def test_p1161421_terminal():
    P = simplex_from_weights((1, 1, 6, 14, 21))
    r = classify_polytope(P)
    assert r.is_terminal and r.is_canonical and not r.is_gorenstein
    assert classify_weights(WeightSystem((1, 1, 6, 14, 21))).is_terminal


def test_p2(p2):
    r = classify_polytope(p2)
    assert r.is_terminal and r.is_canonical and r.is_gorenstein
    assert classify_weights(WeightSystem((1, 1, 1))).to_json() == {
        "canonical": True, "terminal": True, "gorenstein": True, "witness_kappa": None}


def test_not_canonical():
    # P(1,1,4): kappa = 2 gives fractional sum 1/3 + 1/3 + 1/3 = 1 but kappa = 4 gives 4/6+4/6+4/6 = 2 > n-1
    w = classify_weights(WeightSystem((1, 1, 4)))
    assert not w.is_canonical and not w.is_terminal
    assert w.witness_kappa == 4
    p = classify_polytope(simplex_from_weights((1, 1, 4)))
    assert not p.is_canonical


def test_sum_of_fractional_parts():
    assert sum_of_fractional_parts((1, 1, 1), 0) == 0
    assert sum_of_fractional_parts((1, 1, 1), 2) == 2
    assert sum_of_fractional_parts((1, 1, 4), 4) == 2


@given(st.lists(st.integers(1, 30), min_size=3, max_size=6), st.integers(0, 200))
def test_complementary_sums(lam, k):
    kappa = k % sum(lam)
    assert complementary_check(lam, kappa)
    assert sum_of_fractional_parts(lam, kappa).denominator == 1


def test_small_h_is_vacuously_terminal():
    r = classify_weights(WeightSystem((1, 1)))
    assert r.is_terminal and r.is_canonical


def test_refuses_multiplicity():
    with pytest.raises(ValueError):
        classify_weights(WeightSystem((1, 1, 1), multiplicity=3))


def test_resource_limit(monkeypatch):
    monkeypatch.setenv("SIMPLEX_MUTATOR_MAX_H", "10")
    with pytest.raises(ResourceLimitError):
        classify_weights(WeightSystem((1, 1, 4, 6)))
    r = classify_weights(WeightSystem((1, 1, 4, 6)), kappas=[5])
    assert r.is_canonical is None
    assert classify_weights(WeightSystem((1, 1, 4)), kappas=[4]).is_canonical is False


def test_report_invariant():
    with pytest.raises(AssertionError):
        SingularityReport(False, True, False)


def test_gorenstein_matches_dual_integrality(corpus):
    for P in corpus:
        if P.multiplicity == 1 and sum(P.weights) <= 200:
            assert classify_weights(WeightSystem(P.weights)).is_gorenstein == dual_polytope(P).is_lattice_polytope()


def test_cross_validation(corpus):
    n = 0
    for P in corpus:
        if P.multiplicity != 1 or sum(P.weights) > 10**4:
            continue
        a, b = classify_polytope(P), classify_weights(WeightSystem(P.weights))
        assert (a.is_canonical, a.is_terminal, a.is_gorenstein) == (b.is_canonical, b.is_terminal, b.is_gorenstein)
        n += 1
    assert n > 300


def test_fake_simplex_polytope_route():
    P = validate_fano([(2, -1), (-1, 2), (-1, -1)])
    r = classify_polytope(P)
    # (0,-1)... every non-origin lattice point of P is a vertex or interior; compare with a box scan
    from itertools import product
    from simplex_mutator import polytope as geo
    ineqs = P.facet_inequalities()
    pts = [x for x in product(range(-3, 4), repeat=2) if geo.contains(ineqs, x)]
    interior = [x for x in pts if x != (0, 0) and geo.contains(ineqs, x, strict=True)]
    assert r.is_canonical == (not interior)
    assert r.is_terminal == (set(pts) == set(P.vertices) | {(0, 0)})
