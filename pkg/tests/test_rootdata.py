from __future__ import annotations

import random
from math import prod

import pytest
import sympy

from slopecert.linalg import charpoly
from slopecert.rootdata import (BudgetExceeded, UnsupportedType, build_root_system,
                                conjugacy_classes, coxeter_element, enumerate_weyl,
                                identify_component, parabolic_degree_scan, parse_type,
                                standard_parabolics)
from slopecert.report import DEFAULT_TYPES

# standard tables: (number of roots, Coxeter number, degrees)
TABLE = {
    "A1": (2, 2, (2,)), "A2": (6, 3, (2, 3)), "A3": (12, 4, (2, 3, 4)),
    "A7": (56, 8, (2, 3, 4, 5, 6, 7, 8)),
    "B2": (8, 4, (2, 4)), "B3": (18, 6, (2, 4, 6)), "B4": (32, 8, (2, 4, 6, 8)),
    "C3": (18, 6, (2, 4, 6)), "C4": (32, 8, (2, 4, 6, 8)),
    "D4": (24, 6, (2, 4, 4, 6)), "D5": (40, 8, (2, 4, 5, 6, 8)),
    "G2": (12, 6, (2, 6)), "F4": (48, 12, (2, 6, 8, 12)),
    "E6": (72, 12, (2, 5, 6, 8, 9, 12)),
}

# number of conjugacy classes of W
CLASSES = {"A1": 2, "A2": 3, "A3": 5, "A4": 7, "B2": 5, "B3": 10, "G2": 6, "D4": 13,
           "F4": 25, "E6": 25}


def rs_of(name):
    return build_root_system(*parse_type(name))


@pytest.mark.parametrize("name", sorted(TABLE))
def test_tables(name):
    rs = rs_of(name)
    n, h, d = TABLE[name]
    assert len(rs.roots) == n
    assert rs.coxeter_number == h
    assert rs.degrees == d
    assert tuple(x - 1 for x in d) == rs.exponents


@pytest.mark.parametrize("name", DEFAULT_TYPES)
def test_structural_invariants(name):
    rs = rs_of(name)
    assert len(rs.roots) == rs.coxeter_number * rs.rank
    assert rs.coxeter_number == max(rs.degrees)
    roots = set(rs.roots)
    for a in rs.roots:
        assert tuple(-c for c in a) in roots
        assert all(c >= 0 for c in a) or all(c <= 0 for c in a)
    assert sum(rs.highest_root) == rs.coxeter_number - 1
    assert tuple(rs.highest_root) == tuple(rs.marks)
    # each simple reflection permutes the roots
    for s in rs.simple_reflections:
        assert sorted(s.perm) == list(range(len(rs.roots)))


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B3", "G2", "F4", "D4"])
def test_weyl_order_and_matrices(name):
    rs = rs_of(name)
    W = enumerate_weyl(rs)
    assert len(W) == prod(rs.degrees)
    rng = random.Random(1)
    for w in rng.sample(W, min(30, len(W))):
        for k, root in enumerate(rs.roots):
            assert tuple(w.act(root)) == rs.roots[w.perm[k]]
        assert len(W) % w.order == 0
        assert (w * w.inverse()).is_identity()


def test_e6_weyl_order():
    assert len(enumerate_weyl(rs_of("E6"))) == 51840


@pytest.mark.parametrize("name", sorted(CLASSES))
def test_class_counts(name):
    rs = rs_of(name)
    cls = conjugacy_classes(rs)
    assert len(cls) == CLASSES[name]
    assert sum(len(c) for c in cls) == rs.weyl_order


@pytest.mark.parametrize("name", DEFAULT_TYPES)
def test_coxeter_element(name):
    rs = rs_of(name)
    c = coxeter_element(rs)
    assert c.order == rs.coxeter_number
    p = charpoly([list(r) for r in c.matrix])
    assert sum(p) != 0  # 1 is not a root of the characteristic polynomial


def test_coxeter_small():
    assert coxeter_element(rs_of("A1")).order == 2
    assert coxeter_element(rs_of("A2")).order == 3


def test_budget_and_gating():
    with pytest.raises(BudgetExceeded):
        enumerate_weyl(rs_of("E6"), budget=1000)
    with pytest.raises(UnsupportedType):
        build_root_system("E", 7)
    with pytest.raises(UnsupportedType):
        parse_type("Q")
    assert build_root_system("E", 7, allow_large=True).n_positive == 63


def test_parabolics_e6():
    rs = rs_of("E6")
    pars = standard_parabolics(rs)
    assert len(pars) == 2 ** 6 - 1
    top = max(p.root_count for p in pars)
    assert top == 40
    assert {p.label for p in pars if p.root_count == 40} == {"D5"}
    assert max(p.root_count for p in pars if len(p.subset) <= 4) == 24
    assert {p.label for p in pars if len(p.subset) <= 4 and p.root_count == 24} == {"D4"}
    assert parabolic_degree_scan(rs, 9) == ()
    scan8 = parabolic_degree_scan(rs, 8)
    assert scan8 and all(p.label == "D5" for p in scan8)


def test_parabolics_a3():
    rs = rs_of("A3")
    assert max(p.root_count for p in standard_parabolics(rs)) == 6
    assert parabolic_degree_scan(rs, 5) == ()


@pytest.mark.parametrize("name", ["A4", "B4", "C4", "D5", "F4", "E6"])
def test_parabolic_root_counts_match_enumeration(name):
    rs = rs_of(name)
    for p in standard_parabolics(rs):
        inside = [r for r in rs.roots if all(r[i] == 0 for i in range(rs.rank) if i not in p.subset)]
        assert p.root_count == len(inside)
        assert sum(d - 1 for d in p.degrees) * 2 == p.root_count


def test_identify_subdiagrams():
    rs = rs_of("F4")
    assert identify_component(rs.gram, [0, 1, 2, 3])[0] == "F"
    e6 = rs_of("E6")
    labels = {p.label for p in standard_parabolics(e6) if len(p.subset) == 5}
    assert "D5" in labels and "A5" in labels
