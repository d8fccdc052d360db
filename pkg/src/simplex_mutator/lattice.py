"""Exact integer linear algebra on N = Z^n and its dual M.

Vectors are plain tuples of Python ints and matrices are lists of rows, so
every quantity is arbitrary precision.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

LatticeVector = tuple[int, ...]
DualVector = tuple[int, ...]
IntegerMatrix = list[list[int]]


class DimensionError(ValueError):
    pass


class DegenerateSublatticeError(ValueError):
    pass


def pair(u: Sequence[int], v: Sequence[int]) -> int:
    """Evaluate the functional ``u`` at the point ``v``."""
    if len(u) != len(v):
        raise DimensionError(f"dimension mismatch: {len(u)} != {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def gcd_list(values) -> int:
    # gcd() of nothing is 0, matching gcd(0, 0) = 0
    return reduce(gcd, values, 0)


def is_primitive(v: Sequence[int]) -> bool:
    return gcd_list(v) == 1


def primitive(v: Sequence[int]) -> LatticeVector:
    g = gcd_list(v)
    if g == 0:
        raise ValueError("the zero vector has no primitive representative")
    return tuple(x // g for x in v)


def identity(n: int) -> IntegerMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in A)


def det(A) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rational_det(A) -> Fraction:
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    result = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            M[k], M[p] = M[p], M[k]
            result = -result
        result *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f:
                for j in range(k, n):
                    M[i][j] -= f * M[k][j]
    return result


def solve(A, b) -> tuple[Fraction, ...]:
    """Solve the square nonsingular system ``A x = b`` over Q."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular system")
        M[k], M[p] = M[p], M[k]
        piv = M[k][k]
        M[k] = [x / piv for x in M[k]]
        for i in range(n):
            if i != k and M[i][k]:
                f = M[i][k]
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
    return tuple(row[n] for row in M)


def rank(A) -> int:
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, rows):
            if M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def inverse(A) -> list[list[Fraction]]:
    n = len(A)
    cols = [solve(A, [int(i == j) for i in range(n)]) for j in range(n)]
    return transpose(cols)


def kernel_vector(A) -> LatticeVector:
    """Primitive integer generator of the kernel of an (n-1) x n matrix of rank n-1.

    Uses signed maximal minors (the generalised cross product), so the sign is
    determined by the row order of ``A``.
    """
    n = len(A[0]) if A else 1
    if len(A) != n - 1:
        raise DimensionError("need exactly n-1 rows to pin a kernel line")
    x = []
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A]
        x.append((-1) ** j * det(minor))
    if not any(x):
        raise DegenerateSublatticeError("rows are linearly dependent")
    return primitive(x)


def smith_normal_form(A) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(U, D, V)`` with ``U A V = D`` in Smith normal form.

    U and V are unimodular; D is diagonal with nonnegative entries
    d_1 | d_2 | ... | d_r followed by zeros.  The pivot at each stage is the
    entry of least nonzero absolute value in the remaining block.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for M in (D, V):
            for row in M:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    add_row(t, i, -q)
                if D[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    add_col(t, j, -q)
                if D[t][j]:
                    clean = False
            if not clean:
                continue
            # divisibility: fold any offending row into row t and retry
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return U, D, V


def invariant_factors(A) -> list[int]:
    _, D, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def hermite_normal_form(A) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Row-style Hermite normal form: returns ``(H, U)`` with ``U A = H``.

    H is in row echelon form with positive pivots and the entries above each
    pivot reduced into ``[0, pivot)``; U is unimodular.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [list(row) for row in A]
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [(abs(H[i][c]), i) for i in range(r, m) if H[i][c]]
            if not nz:
                break
            _, p = min(nz)
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                if H[i][c]:
                    done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


def sublattice_index(generators: Sequence[Sequence[int]]) -> int:
    """Index in Z^n of the sublattice spanned by ``generators``.

    Raises DegenerateSublatticeError when the generators do not span Q^n.
    """
    gens = [list(g) for g in generators]
    if not gens:
        raise DegenerateSublatticeError("degenerate sublattice")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise DimensionError("generators of unequal length")
    factors = invariant_factors(transpose(gens))
    if len(factors) < n:
        raise DegenerateSublatticeError("degenerate sublattice")
    out = 1
    for d in factors:
        out *= d
    return out


def unimodular_with_first_row(w: Sequence[int]) -> IntegerMatrix:
    """A matrix in GL_n(Z) whose first row is the primitive vector ``w``.

    Changing coordinates by this matrix turns the height ``w(x)`` into the
    first coordinate.
    """
    if not is_primitive(w):
        raise ValueError(f"{tuple(w)} is not primitive")
    U, _, V = smith_normal_form([list(w)])
    # U = (+-1), so w V = +-e_1 and the first row of V^{-1} is +-w
    Vinv = [[int(x) for x in row] for row in inverse(V)]
    if U[0][0] < 0:
        Vinv[0] = [-x for x in Vinv[0]]
    assert tuple(Vinv[0]) == tuple(w)
    return Vinv


def lll_reduce_columns(A) -> IntegerMatrix:
    """Unimodular B making the columns of ``A B`` LLL-reduced.

    ``A`` must have full column rank.  Columns come out shortest last, which
    suits lattice-point enumeration that counts the last coordinate in bulk.
    """
    from sympy import ZZ
    from sympy.polys.matrices import DomainMatrix

    At = transpose(A)
    M = DomainMatrix([[ZZ(int(x)) for x in row] for row in At], (len(At), len(At[0])), ZZ)
    _, T = M.lll_transform()
    T = [[int(x) for x in row] for row in T.to_list()]
    # rows of T @ A^T are the reduced columns; reverse so the shortest is last
    return transpose(T[::-1])
