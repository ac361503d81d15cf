from itertools import combinations, permutations
from math import gcd, prod

import pytest
from hypothesis import given, settings, strategies as st

from prym_forge import normalform as nf


def matrices(max_rows=5, max_cols=5, bound=9):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda k: st.lists(st.lists(st.integers(-bound, bound), min_size=k, max_size=k), min_size=m, max_size=m)))


def leibniz(m):
    def sign(p):
        inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
        return -1 if inversions % 2 else 1
    return sum(sign(p) * prod(m[i][p[i]] for i in range(len(m))) for p in permutations(range(len(m))))


def oracle_divisors(a):
    """Elementary divisors from determinantal divisors: d_k = gcd of k x k minors."""
    m, k = len(a), len(a[0])
    dets = [1]
    for size in range(1, min(m, k) + 1):
        g = 0
        for rows in combinations(range(m), size):
            for cols in combinations(range(k), size):
                g = gcd(g, leibniz([[a[r][c] for c in cols] for r in rows]))
        if g == 0:
            break
        dets.append(g)
    return [dets[i] // dets[i - 1] for i in range(1, len(dets))]


@settings(max_examples=150, deadline=None)
@given(matrices(4, 4))
def test_snf_against_minors(a):
    D, U, V = nf.smith_normal_form(a)
    assert nf.matmul(nf.matmul(U, a), V) == D
    assert nf.is_unimodular(U) and nf.is_unimodular(V)
    diag = nf.elementary_divisors(a)
    assert diag == oracle_divisors(a)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    m, k = nf.shape(D)
    assert all(D[i][j] == 0 for i in range(m) for j in range(k) if i != j)


@settings(max_examples=100, deadline=None)
@given(matrices(5, 5, 20))
def test_determinant_against_leibniz(a):
    square = [row[: len(a)] + [0] * max(0, len(a) - len(row)) for row in a]
    assert nf.determinant(square) == leibniz(square)


@settings(max_examples=100, deadline=None)
@given(matrices(4, 6))
def test_kernel_is_saturated(a):
    K = nf.kernel_basis(a)
    r = nf.rank(a)
    k = len(a[0])
    assert len(K) == k and all(len(row) == k - r for row in K)
    if k > r:
        assert all(x == 0 for row in nf.matmul(a, K) for x in row)
        # saturated: all elementary divisors of the kernel basis are 1
        assert nf.elementary_divisors(K) == [1] * (k - r)


def test_left_inverse_and_solve():
    B = [[1, 0], [2, 1], [3, 5]]
    L = nf.left_inverse(B)
    assert nf.matmul(L, B) == nf.identity(2)
    assert nf.solve_in_lattice(B, [[1], [3], [8]]) == [[1], [1]]
    with pytest.raises(ValueError):
        nf.solve_in_lattice(B, [[1], [0], [0]])
    with pytest.raises(ValueError):
        nf.left_inverse([[2], [0]])


def test_small_cases():
    assert nf.elementary_divisors([[2, 4], [6, 8]]) == [2, 4]
    assert nf.rank([[0, 0], [0, 0]]) == 0
    assert nf.determinant([]) == 1
    assert nf.transpose([[1, 2, 3]]) == [[1], [2], [3]]
