from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import sympy
from hypothesis import given, strategies as st

from slopecert.exact import CycloNum
from slopecert.linalg import (charpoly, certify_not_nilpotent, in_open_halfspace,
                              is_nilpotent_exact, nonnegative_solution, normal_form, nullspace,
                              positive_dependency, primes_1_mod, rank, rref, solve,
                              sparse_from_dense, squarefree_part)

small = st.integers(-4, 4)


def matrices(n, m):
    return st.lists(st.lists(small, min_size=m, max_size=m), min_size=n, max_size=n)


@given(matrices(4, 5))
def test_rref_matches_sympy(A):
    R, piv = rref(A)
    S, spiv = sympy.Matrix(A).rref()
    assert list(piv) == list(spiv)
    assert [[Fraction(int(x.p), int(x.q)) for x in S.row(i)] for i in range(len(R))] == \
        [list(r) for r in R][:len(R)]


@given(matrices(4, 4))
def test_rank_and_nullspace(A):
    assert rank(A) == sympy.Matrix(A).rank()
    N = nullspace(A, 4)
    assert len(N) == 4 - rank(A)
    for v in N:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)


@given(matrices(5, 5))
def test_charpoly_matches_sympy(A):
    x = sympy.Symbol("x")
    expected = sympy.Matrix(A).charpoly(x).all_coeffs()[::-1]
    assert charpoly(A) == [Fraction(int(c)) for c in expected]


def test_charpoly_over_cyclotomic_field():
    z = CycloNum.zeta(3)
    A = [[z, 1], [0, z * z]]
    p = charpoly(A)
    # (x - z)(x - z^2) = x^2 + x + 1
    assert p == [1, 1, 1]


def test_squarefree_part():
    # (x-1)^2 (x+2)
    p = [Fraction(2), Fraction(-3), Fraction(0), Fraction(1)]
    q = squarefree_part(p)
    assert [c / q[-1] for c in q] == [-2, 1, 1]


@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve(A, b):
    x = solve(A, b)
    M = sympy.Matrix(A)
    consistent = M.rank() == M.row_join(sympy.Matrix(b)).rank()
    assert (x is not None) == consistent
    if x is not None:
        assert all(sum(a * v for a, v in zip(row, x)) == bb for row, bb in zip(A, b))


def test_normal_form_is_canonical():
    a = normal_form([[1, 2, 3], [0, 1, 1]])
    b = normal_form([[1, 3, 4], [2, 5, 7]])
    assert a == b


def _brute_dependency(vectors):
    """0 in the convex hull, by Caratheodory: test every subset of size <= dim + 1."""
    dim = len(vectors[0])
    for k in range(1, min(len(vectors), dim + 1) + 1):
        for S in combinations(vectors, k):
            A = sympy.Matrix([list(v) for v in S]).T.col_join(sympy.ones(1, k))
            b = sympy.Matrix([0] * dim + [1])
            try:
                sol, params = A.gauss_jordan_solve(b)
            except ValueError:
                continue
            if params.shape[0] == 0 and all(s >= 0 for s in sol):
                return True
            if params.shape[0]:
                # a face of the solution set; fall back on smaller subsets
                continue
    return False


@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=1, max_size=5))
def test_positive_dependency_matches_brute_force(vs):
    w = positive_dependency(vs)
    if w is not None:
        assert all(x >= 0 for x in w) and sum(w) == 1
        assert all(sum(wi * v[i] for wi, v in zip(w, vs)) == 0 for i in range(2))
    assert (w is not None) == _brute_dependency(vs)


def test_halfspace_examples():
    assert in_open_halfspace([[1, 0], [0, 1], [1, 1]])
    assert not in_open_halfspace([[1, 0], [-1, 0]])
    assert not in_open_halfspace([[1, 0], [0, 1], [-1, -1]])
    assert not in_open_halfspace([[0, 0]])


def test_nonnegative_solution():
    assert nonnegative_solution([[1, 1]], [2]) is not None
    assert nonnegative_solution([[1, 1]], [-1]) is None


def test_nilpotency_certificates():
    rng = random.Random(3)
    for _ in range(40):
        n = 5
        strict = [[rng.randint(-3, 3) if j > i else 0 for j in range(n)] for i in range(n)]
        S = sparse_from_dense(strict)
        assert is_nilpotent_exact(S)
        assert not certify_not_nilpotent(S, n)
        A = [row[:] for row in strict]
        A[n - 1][0] = rng.randint(1, 3)
        expected = sympy.Matrix(A) ** n == sympy.zeros(n)
        assert is_nilpotent_exact(sparse_from_dense(A)) == expected
        if certify_not_nilpotent(sparse_from_dense(A), n):
            assert not expected


def test_primes_1_mod():
    for m in (3, 8, 12):
        for p in primes_1_mod(m, count=3):
            assert p % m == 1 and sympy.isprime(p)
