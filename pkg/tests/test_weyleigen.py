from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from slopecert.rootdata import build_root_system, coxeter_element, enumerate_weyl, parse_type
from slopecert.weyleigen import (check_eigenvector_bound, count_N, degree_criterion, eigenspace,
                                 elementary_symmetric, elementary_symmetric_check,
                                 enumerate_flats, generic_point, in_v_b, min_N_over_eigenspace,
                                 type_a_diagonal, v_b_components, v_b_components_bruteforce,
                                 vanishing_roots)


def rs_of(name):
    return build_root_system(*parse_type(name))


def test_count_n_type_a_example():
    rs = rs_of("A3")
    x = [1, 0, 0]
    assert type_a_diagonal(x) == [1, -1, 0, 0]
    assert count_N(rs, x) == 10
    assert count_N(rs, [0, 0, 0]) == 0


def test_count_n_regular():
    rs = rs_of("B3")
    x = [Fraction(7), Fraction(11), Fraction(3, 2)]
    assert count_N(rs, x) == len(rs.roots) - len(vanishing_roots(rs, x))


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_count_n_weyl_invariant(name):
    rs = rs_of(name)
    rng = random.Random(2)
    W = enumerate_weyl(rs)
    for _ in range(10):
        x = [Fraction(rng.randint(-3, 3)) for _ in range(rs.rank)]
        n = count_N(rs, x)
        for w in rng.sample(W, min(8, len(W))):
            assert count_N(rs, w.act(x)) == n


def test_eigenspace_examples():
    rs = rs_of("A1")
    s = rs.simple_reflections[0]
    assert eigenspace(rs, s, 2).dim == 1
    assert eigenspace(rs, s, 1).dim == 0
    a2 = rs_of("A2")
    c = coxeter_element(a2)
    assert eigenspace(a2, c, 3).dim == 1
    assert eigenspace(a2, c, 1).dim == 0
    assert eigenspace(a2, c, 2).dim == 0


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "C3"])
def test_coxeter_eigenvector_is_regular(name):
    rs = rs_of(name)
    c = coxeter_element(rs)
    E = eigenspace(rs, c, rs.coxeter_number)
    assert E.dim == 1
    for v in E.basis:
        assert count_N(rs, v) == len(rs.roots)
        assert list(c.act(v)) != list(v)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_v_b_matches_bruteforce(name):
    rs = rs_of(name)
    for b in range(1, rs.coxeter_number + 2):
        fast = {E.basis for E in v_b_components(rs, b)}
        slow = {E.basis for E in v_b_components_bruteforce(rs, b)}
        assert fast == slow
        assert bool(fast) == degree_criterion(rs, b)


def test_v_b_full_space():
    rs = rs_of("A1")
    comps = v_b_components(rs, 2)
    assert in_v_b(comps, [Fraction(5)])
    rs = rs_of("A2")
    comps = v_b_components(rs, 2)
    assert not v_b_components(rs, 4)


def test_elementary_symmetric():
    assert elementary_symmetric([1, 2, 3]) == [1, 6, 11, 6]
    assert elementary_symmetric([]) == [1]
    # (1, -1): e1 = 0, e2 = -1; lies in V(2) for sl2
    assert elementary_symmetric_check(2, [1, -1], 2)
    assert elementary_symmetric_check(3, [1, -1, 0], 2)
    assert not elementary_symmetric_check(3, [2, -1, -1], 2)
    with pytest.raises(ValueError):
        elementary_symmetric_check(2, [1, 1], 2)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3"])
def test_representatives_agree_with_all_elements(name):
    rs = rs_of(name)
    fast = check_eigenvector_bound(rs)
    slow = check_eigenvector_bound(rs, all_elements=True)
    assert [(r.b, r.min_N, r.nonzero) for r in fast.records] == \
        [(r.b, r.min_N, r.nonzero) for r in slow.records]
    assert fast.passed and slow.passed
    assert fast.equality_bs() == [rs.coxeter_number]


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "C3"])
def test_flats_are_sound(name):
    # a generic point of each flat vanishes on exactly the flat's roots
    rs = rs_of(name)
    rng = random.Random(5)
    for b in range(2, rs.coxeter_number + 1):
        for E in v_b_components(rs, b)[:3]:
            flats = enumerate_flats(rs, E)
            assert flats and flats[-1].dim <= E.dim
            for f in flats:
                x = generic_point(rs, f, rng)
                assert set(vanishing_roots(rs, x)) == set(f.vanishing)
                assert count_N(rs, x) == f.N
            n, best = min_N_over_eigenspace(rs, E)
            assert n == min(f.N for f in flats)


@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4), st.integers(1, 5))
def test_sampled_points_satisfy_bound(coeffs, b):
    # any nonzero point of a zeta_b-eigenspace has N >= b * rank
    rs = rs_of("A4")
    comps = v_b_components(rs, b)
    for E in comps[:4]:
        x = [0] * rs.rank
        for c, v in zip(coeffs, E.basis):
            x = [a + c * u for a, u in zip(x, v)]
        if any(x):
            assert count_N(rs, x) >= b * rs.rank
