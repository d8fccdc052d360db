from fractions import Fraction
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from simplex_mutator import polytope as geo

pts3 = st.lists(st.tuples(*[st.integers(-4, 4)] * 3), min_size=4, max_size=12)


def _box_points(ineqs, dim, B):
    return [x for x in product(range(-B, B + 1), repeat=dim) if geo.contains(ineqs, x)]


def test_square_hull_and_facets():
    pts = [(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)]
    assert geo.convex_hull_vertices(pts) == [(0, 0), (0, 2), (2, 0), (2, 2)]
    assert geo.facets([(0, 0), (2, 0), (0, 2), (2, 2)]) == [
        ((-1, 0), Fraction(0)), ((0, -1), Fraction(0)), ((0, 1), Fraction(2)), ((1, 0), Fraction(2))]


def test_lower_dimensional_hull():
    # a segment and a triangle sitting in R^3
    assert geo.convex_hull_vertices([(0, 0, 0), (1, 1, 1), (2, 2, 2)]) == [(0, 0, 0), (2, 2, 2)]
    tri = [(0, 0, 1), (2, 0, 1), (0, 2, 1), (1, 1, 1), (1, 0, 1)]
    assert geo.convex_hull_vertices(tri) == [(0, 0, 1), (0, 2, 1), (2, 0, 1)]
    assert geo.in_hull(tri, (1, 1, 1))
    assert not geo.in_hull(tri, (1, 1, 2))


@settings(max_examples=15, deadline=None)
@given(pts3)
def test_hull_vertices_are_extreme_and_cover(points):
    verts = geo.convex_hull_vertices(points)
    for v in verts:
        others = [p for p in verts if p != v]
        assert not others or not geo.in_hull(others, v)
    for p in points:
        assert geo.in_hull(verts, p)


@settings(max_examples=40, deadline=None)
@given(pts3)
def test_enumeration_matches_box_scan(points):
    verts = geo.convex_hull_vertices(points)
    r, _ = geo.affine_coordinates(verts)
    if r < 3:
        return
    ineqs = geo.facets(verts)
    got = geo.lattice_points(ineqs, 3)
    assert got == _box_points(ineqs, 3, 4)
    assert geo.count_lattice_points(ineqs, 3) == len(got)


def test_minkowski_points():
    assert geo.minkowski_points([(0, 0), (1, 0)], [(0, 0), (0, 1)]) == {(0, 0), (1, 0), (0, 1), (1, 1)}
