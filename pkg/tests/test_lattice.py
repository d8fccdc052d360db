from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from simplex_mutator import lattice as la

small = st.integers(-9, 9)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def _index_by_residues(gens, D):
    """Index of the lattice spanned by gens, counted as |(Z/D)^n| / |L mod D|.

    Needs D * Z^n inside the lattice, which holds for any nonzero maximal minor D.
    """
    n = len(gens[0])
    seen = {tuple(0 for _ in range(n))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % D for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return D ** n // len(seen)


def test_pair_and_dimension_error():
    assert la.pair((1, 2, 3), (4, 5, 6)) == 32
    with pytest.raises(la.DimensionError):
        la.pair((1, 2), (1, 2, 3))


def test_gcd_list_edge_cases():
    assert la.gcd_list([]) == 0
    assert la.gcd_list([0, 0]) == 0
    assert la.gcd_list([-4, 6]) == 2


def test_primitive():
    assert la.primitive((4, -6, 8)) == (2, -3, 4)
    assert la.is_primitive((1, 0, 0))
    with pytest.raises(ValueError):
        la.primitive((0, 0))


def test_det_known():
    assert la.det([[2, 0, 0], [0, 3, 0], [0, 0, 4]]) == 24
    assert la.det([[0, 1], [1, 0]]) == -1
    assert la.det([[1, 2], [2, 4]]) == 0


@given(matrices(3, 3))
def test_det_matches_sympy(A):
    assert la.det(A) == Matrix(A).det()


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(lambda n: matrices(m, n))))
def test_smith_normal_form(A):
    U, D, V = la.smith_normal_form(A)
    assert la.matmul(la.matmul(U, A), V) == D
    assert abs(la.det(U)) == 1 and abs(la.det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[len(nz):] == [0] * (len(diag) - len(nz))
    ref = sympy_snf(Matrix(A))
    assert sorted(abs(ref[i, i]) for i in range(len(diag))) == sorted(abs(d) for d in diag)


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(lambda n: matrices(m, n))))
def test_hermite_normal_form(A):
    H, U = la.hermite_normal_form(A)
    assert la.matmul(U, A) == H
    assert abs(la.det(U)) == 1
    last = -1
    for row in H:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        p = nz[0]
        assert p > last and row[p] > 0
        last = p
        for other in H:
            if other is not row and any(other) and [j for j, x in enumerate(other) if x][0] < p:
                assert 0 <= other[p] < row[p]


def test_sublattice_index_examples():
    assert la.sublattice_index([(1, 0), (0, 1), (-1, -1)]) == 1
    assert la.sublattice_index([(2, 0), (0, 1), (-2, -1)]) == 2
    with pytest.raises(la.DegenerateSublatticeError):
        la.sublattice_index([(1, 0), (2, 0), (3, 0)])


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                                                    min_size=n + 1, max_size=n + 1)))
def test_sublattice_index_against_oracles(gens):
    n = len(gens[0])
    minors = [la.det([gens[i] for i in idx]) for idx in combinations(range(len(gens)), n)]
    g = la.gcd_list(minors)
    if g == 0:
        with pytest.raises(la.DegenerateSublatticeError):
            la.sublattice_index(gens)
        return
    idx = la.sublattice_index(gens)
    assert idx == g
    D = next(abs(m) for m in minors if m)
    if D <= 40:
        assert idx == _index_by_residues([tuple(x) for x in gens], D)


def test_kernel_vector():
    w = la.kernel_vector([[1, 0, 0], [0, 1, 0]])
    assert w in ((0, 0, 1), (0, 0, -1))
    with pytest.raises(la.DegenerateSublatticeError):
        la.kernel_vector([[1, 2, 3], [2, 4, 6]])


@given(matrices(2, 3))
def test_kernel_vector_is_primitive_kernel(A):
    if la.rank(A) < 2:
        return
    w = la.kernel_vector(A)
    assert la.is_primitive(w)
    assert all(la.pair(row, w) == 0 for row in A)


@given(st.lists(small, min_size=2, max_size=4))
def test_unimodular_with_first_row(w):
    if not la.is_primitive(w):
        return
    U = la.unimodular_with_first_row(w)
    assert tuple(U[0]) == tuple(w)
    assert abs(la.det(U)) == 1


def test_inverse_and_solve():
    A = [[2, 1], [1, 1]]
    Ainv = la.inverse(A)
    assert [[int(x) for x in row] for row in Ainv] == [[1, -1], [-1, 2]]
    assert la.solve(A, [3, 2]) == (1, 1)


def test_lll_reduce_columns_is_unimodular():
    A = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-17, -40, -121]]
    B = la.lll_reduce_columns(A)
    assert abs(la.det(B)) == 1
    AB = la.matmul(A, B)
    assert max(abs(x) for row in AB for x in row) <= max(abs(x) for row in A for x in row)


def test_rank():
    assert la.rank([[1, 2], [2, 4]]) == 1
    assert la.rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert la.rank([list(p) for p in product((0, 1), repeat=2)]) == 2
