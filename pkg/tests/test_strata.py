from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from slopecert.chevalley import AlgebraElement, build_chevalley
from slopecert.exact import PuiseuxSeries
from slopecert.linalg import rank
from slopecert.rootdata import build_root_system, parse_type
from slopecert.strata import (ApartmentPoint, RamifiedInput, Stratum, barycenter,
                              candidate_depths, default_denominator_bound, graded_piece,
                              grid_size, has_fundamental_stratum_at_depth, killing_form,
                              origin, residue_pairing, scan_alcove, scan_alcove_report)

F = Fraction


def alg_of(name):
    return build_chevalley(build_root_system(*parse_type(name)))


def test_graded_piece_a1():
    alg = alg_of("A1")
    x = barycenter(alg.rs)
    assert x.values == (F(1, 2),)
    piece = graded_piece(alg, x, F(-1, 2))
    # e_alpha t^-1 and e_-alpha t^0
    labels = {(alg.basis_label(k), m) for k, m in piece.basis}
    assert labels == {("e(1)", -1), ("e(-1)", 0)}
    assert not graded_piece(alg, x, F(1, 3))
    zero = graded_piece(alg, origin(alg.rs), 0)
    assert zero.dim == 3


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_dimension_accounting_and_periodicity(name):
    alg = alg_of(name)
    rs = alg.rs
    pts = [barycenter(rs), origin(rs), ApartmentPoint.of([F(1, 7)] * rs.rank)]
    for x in pts:
        if not x.in_alcove(rs.marks):
            continue
        D = 2 * rs.coxeter_number * 7
        total = sum(graded_piece(alg, x, F(k, D)).dim for k in range(D))
        assert total == alg.dim
        for k in range(0, D, 5):
            r = F(k, D)
            assert graded_piece(alg, x, r + 1).basis == graded_piece(alg, x, r).shifted_labels(1)


def test_killing_form_sl2():
    alg = alg_of("A1")
    e, f, h = alg.e((1,)), alg.e((-1,)), alg.h(0)
    assert killing_form(alg, e, f) == 4
    assert killing_form(alg, h, h) == 8
    assert killing_form(alg, e, e) == 0


def test_residue_pairing_example():
    alg = alg_of("A1")
    X = AlgebraElement({alg.rs.root_index((1,)): PuiseuxSeries.monomial(1, -1)})
    Y = AlgebraElement({alg.rs.root_index((-1,)): PuiseuxSeries.monomial(1, 1)})
    assert residue_pairing(alg, X, Y) == 4
    Y2 = AlgebraElement({alg.rs.root_index((-1,)): PuiseuxSeries.monomial(1, 0)})
    assert residue_pairing(alg, X, Y2) == 0
    with pytest.raises(RamifiedInput):
        residue_pairing(alg, AlgebraElement({0: PuiseuxSeries.monomial(1, F(1, 2))}), Y)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_residue_duality(name):
    # the pairing of the degree r piece with the degree -r piece is perfect
    alg = alg_of(name)
    rs = alg.rs
    for x in (barycenter(rs), origin(rs)):
        for r in (F(0), F(1, rs.coxeter_number), F(2, rs.coxeter_number), F(1)):
            P, Q = graded_piece(alg, x, r), graded_piece(alg, x, -r)
            assert P.dim == Q.dim
            if not P:
                continue
            M = [[residue_pairing(alg, X, Y) for Y in Q.elements(alg)] for X in P.elements(alg)]
            assert rank(M) == P.dim


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3", "B3", "F4"])
def test_fundamental_at_barycenter(name):
    alg = alg_of(name)
    rs = alg.rs
    assert has_fundamental_stratum_at_depth(alg, barycenter(rs), F(1, rs.coxeter_number))
    assert has_fundamental_stratum_at_depth(alg, origin(rs), 1)
    assert not has_fundamental_stratum_at_depth(alg, origin(rs), F(1, 2))


def test_scan_examples():
    a2 = alg_of("A2")
    assert scan_alcove(a2, F(1, 3), 12) == [ApartmentPoint.of([F(1, 3), F(1, 3)])]
    assert scan_alcove(a2, F(1, 4), 12) == []
    a1 = alg_of("A1")
    assert scan_alcove(a1, F(1, 2), 8) == [ApartmentPoint.of([F(1, 2)])]
    assert scan_alcove(a1, F(1, 4), 8) == []
    assert scan_alcove(a1, F(1, 5), 8) == []
    with pytest.raises(ValueError):
        scan_alcove(a1, F(1, 2), 1)
    with pytest.raises(ValueError):
        scan_alcove(a1, 0, 8)


@pytest.mark.parametrize("name,depths", [("A2", [F(1, 3), F(1, 2), F(2, 3)]),
                                         ("B2", [F(1, 4), F(1, 2)]),
                                         ("G2", [F(1, 6), F(1, 3)]),
                                         ("A3", [F(1, 4), F(1, 2)])])
def test_grid_and_flats_agree(name, depths):
    alg = alg_of(name)
    D = default_denominator_bound(alg.rs)
    for r in depths:
        g = scan_alcove(alg, r, D, method="grid")
        f = scan_alcove(alg, r, D, method="flats")
        assert g == f
        assert g


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "C3"])
def test_barycenter_unique_at_minimal_depth(name):
    alg = alg_of(name)
    rs = alg.rs
    D = default_denominator_bound(rs)
    h = rs.coxeter_number
    assert scan_alcove(alg, F(1, h), D) == [barycenter(rs)]
    for r in candidate_depths(rs, D, F(1, h)):
        assert scan_alcove_report(alg, r, D).points == []


def test_grid_size():
    a1 = build_root_system("A", 1)
    assert grid_size(a1, 8) == 9
    a2 = build_root_system("A", 2)
    assert grid_size(a2, 3) == 10


def test_stratum_validation():
    alg = alg_of("A1")
    x = barycenter(alg.rs)
    ok = AlgebraElement({alg.rs.root_index((1,)): PuiseuxSeries.monomial(2, -1),
                         alg.rs.root_index((-1,)): PuiseuxSeries.constant(3)})
    Stratum(x, F(1, 2), ok).validate(alg)
    bad = AlgebraElement({alg.h_index(0): PuiseuxSeries.constant(1)})
    with pytest.raises(ValueError):
        Stratum(x, F(1, 2), bad).validate(alg)


@given(st.integers(0, 12), st.integers(0, 12), st.integers(1, 24))
def test_piece_membership(k1, k2, n):
    # e_alpha t^m lies in the degree r piece exactly when alpha(x) + m = r
    alg = alg_of("A2")
    if k1 + k2 > 12:
        return
    x = ApartmentPoint.of([F(k1, 12), F(k2, 12)])
    r = F(n, 12) - 1
    piece = graded_piece(alg, x, r)
    for k, m in piece.basis:
        if not alg.is_cartan(k):
            assert x.root_value(alg.rs.roots[k]) + m == r
