from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from slopecert.chevalley import (AlgebraElement, ad_matrix, build_chevalley, cartan_is_regular,
                                 is_nilpotent, is_regular_semisimple, probe_span,
                                 root_span_in_halfspace)
from slopecert.exact import CycloNum
from slopecert.rootdata import build_root_system, parse_type


def alg_of(name):
    return build_chevalley(build_root_system(*parse_type(name)))


def matmul(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def test_sl2_relations():
    alg = alg_of("A1")
    e, f, h = alg.e((1,)), alg.e((-1,)), alg.h(0)
    assert alg.bracket(e, f) == h
    assert alg.bracket(h, e) == e.scale(2)
    assert alg.bracket(h, f) == f.scale(-2)
    assert alg.dim == 3


def test_a2_constants():
    alg = alg_of("A2")
    assert alg.dim == 8
    assert {abs(v) for v in alg.N.values()} == {1}


def test_g2_constants():
    alg = alg_of("G2")
    assert alg.dim == 14
    assert max(abs(v) for v in alg.N.values()) == 3


@pytest.mark.parametrize("name", ["B3", "C3", "G2", "F4", "D4"])
def test_structure_constant_magnitudes(name):
    # |N_{a,b}| = p + 1 with p the largest integer such that b - p a is a root
    alg = alg_of(name)
    rs = alg.rs
    for (a, b), v in alg.N.items():
        ra, rb = rs.roots[a], rs.roots[b]
        p = 0
        while tuple(y - (p + 1) * x for x, y in zip(ra, rb)) in rs.index:
            p += 1
        assert abs(v) == p + 1


def _random_element(alg, rng, density=0.5):
    return AlgebraElement({k: rng.randint(-3, 3) for k in range(alg.dim) if rng.random() < density})


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "C3", "D4"])
def test_ad_is_homomorphism(name):
    alg = alg_of(name)
    rng = random.Random(7)
    for _ in range(5):
        X, Y = _random_element(alg, rng), _random_element(alg, rng)
        lhs = ad_matrix(alg, alg.bracket(X, Y))
        AX, AY = ad_matrix(alg, X), ad_matrix(alg, Y)
        P, Q = matmul(AX, AY), matmul(AY, AX)
        assert lhs == [[p - q for p, q in zip(r1, r2)] for r1, r2 in zip(P, Q)]


@pytest.mark.parametrize("name", ["A3", "B3", "G2"])
def test_jacobi_random(name):
    alg = alg_of(name)
    rng = random.Random(3)
    for _ in range(5):
        X, Y, Z = (_random_element(alg, rng) for _ in range(3))
        j = (alg.bracket(X, alg.bracket(Y, Z)) + alg.bracket(Y, alg.bracket(Z, X))
             + alg.bracket(Z, alg.bracket(X, Y)))
        assert not j


@pytest.mark.parametrize("name", ["A2", "B3", "G2", "F4", "E6"])
def test_nilpotent_and_semisimple_examples(name):
    alg = alg_of(name)
    rs = alg.rs
    pos = AlgebraElement({k: k + 1 for k in range(rs.n_positive)})
    assert is_nilpotent(alg, pos)
    assert not is_regular_semisimple(alg, pos)
    # a regular element of 𝔥: coroot coordinates 1, 10, 100, ...
    y = [10 ** i for i in range(rs.rank)]
    H = alg.cartan_element(y)
    assert cartan_is_regular(alg, y)
    assert is_regular_semisimple(alg, H)
    assert not is_nilpotent(alg, H)


def test_principal_plus_lowest_is_regular_semisimple():
    for name in ("A2", "B2", "G2"):
        alg = alg_of(name)
        rs = alg.rs
        X = AlgebraElement({rs.root_index(a): 1 for a in rs.simple_roots})
        X = X + alg.e(tuple(-c for c in rs.highest_root))
        assert is_regular_semisimple(alg, X)


def test_zero_and_cyclotomic():
    alg = alg_of("A2")
    assert is_nilpotent(alg, AlgebraElement({}))
    z = CycloNum.zeta(3)
    X = alg.e((1, 0), z) + alg.e((0, 1), z * z)
    assert is_nilpotent(alg, X)
    assert not is_nilpotent(alg, X + alg.e((-1, -1), 1))


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_cartan_regularity_matches_adjoint(y):
    alg = alg_of("A3")
    H = alg.cartan_element(y)
    assert cartan_is_regular(alg, y) == is_regular_semisimple(alg, H)


def test_span_probes():
    alg = alg_of("A2")
    rs = alg.rs
    e1, em1 = rs.root_index((1, 0)), rs.root_index((-1, 0))
    assert root_span_in_halfspace(alg, [e1, rs.root_index((1, 1))])
    assert not root_span_in_halfspace(alg, [e1, em1])
    assert probe_span(alg, [alg.e(e1), alg.e(em1)]).nonnilpotent
    assert not probe_span(alg, [alg.e(e1), alg.e((1, 1))]).nonnilpotent
    # e_a + e_b + e_{-a-b}: a span with no half-space certificate whose generic element is not nilpotent
    S = [alg.e((1, 0)), alg.e((0, 1)), alg.e((-1, -1))]
    assert not root_span_in_halfspace(alg, [rs.root_index((1, 0)), rs.root_index((0, 1)),
                                            rs.root_index((-1, -1))])
    assert probe_span(alg, S).nonnilpotent
