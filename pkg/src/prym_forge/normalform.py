"""Exact integer linear algebra on top of sympy's Smith normal form.

Matrices are lists of rows of Python ints (arbitrary precision).  numpy
arrays are accepted on input and converted.
"""

from __future__ import annotations

from typing import Sequence

from sympy import ZZ, Matrix as SympyMatrix
from sympy.matrices.normalforms import smith_normal_decomp
from sympy.polys.matrices import DomainMatrix

Matrix = list[list[int]]


def as_matrix(a) -> Matrix:
    return [[int(x) for x in row] for row in a]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a and a[0] else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def smith_normal_form(a) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U a V = D`` diagonal, ``d_i | d_{i+1}``, ``d_i >= 0``, ``U``, ``V`` unimodular."""
    A = as_matrix(a)
    m = len(A)
    k = len(A[0]) if m else 0
    if m == 0 or k == 0:
        return [row[:] for row in A], identity(m), identity(k)
    D, U, V = smith_normal_decomp(SympyMatrix(A), domain=ZZ)
    D, U, V = (as_matrix(M.tolist()) for M in (D, U, V))
    for i in range(min(m, k)):
        if D[i][i] < 0:
            D[i] = [-x for x in D[i]]
            U[i] = [-x for x in U[i]]
    return D, U, V


def elementary_divisors(a) -> list[int]:
    D, _, _ = smith_normal_form(a)
    return [D[i][i] for i in range(min(shape(D))) if D[i][i]]


def rank(a) -> int:
    return len(elementary_divisors(a))


def kernel_basis(a) -> Matrix:
    """Columns spanning the (saturated) integer kernel of ``a``; returned as a k x r matrix."""
    A = as_matrix(a)
    k = len(A[0]) if A else 0
    D, _, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), k)) if D[i][i])
    return [row[r:] for row in V]


def left_inverse(a) -> Matrix:
    """Integer ``L`` with ``L a = I`` for a saturated full-column-rank ``a``."""
    A = as_matrix(a)
    m, k = shape(A)
    D, U, V = smith_normal_form(A)
    for i in range(k):
        if D[i][i] != 1:
            raise ValueError("columns do not span a saturated sublattice")
    # a = U^-1 [I; 0] V^-1  =>  L = V [I 0] U
    return matmul(V, U[:k])


def determinant(a) -> int:
    M = as_matrix(a)
    if not M:
        return 1
    return int(DomainMatrix([[ZZ(x) for x in row] for row in M], (len(M), len(M)), ZZ).det())


def solve_in_lattice(basis: Sequence[Sequence[int]], vectors) -> Matrix:
    """Coordinates ``C`` with ``basis C = vectors`` (both given column-wise); raises if not integral."""
    B = as_matrix(basis)
    X = as_matrix(vectors)
    L = left_inverse(B)
    C = matmul(L, X)
    if matmul(B, C) != X:
        raise ValueError("vectors do not lie in the lattice")
    return C


def is_unimodular(a) -> bool:
    return abs(determinant(a)) == 1
