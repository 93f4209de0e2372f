from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from slopecert.exact import (CycloNum, PuiseuxSeries, cyclo_minpoly, euler_phi, field_for,
                             format_rational, ord_pole, parse_rational)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)


@st.composite
def cyclonums(draw, m=12):
    n = euler_phi(m)
    return CycloNum(m, draw(st.lists(rationals, min_size=n, max_size=n)))


@st.composite
def series(draw, b=None):
    b = b or draw(st.integers(1, 4))
    terms = draw(st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=4))
    return PuiseuxSeries(terms, b)


# -- cyclotomic polynomials ---------------------------------------------------


@pytest.mark.parametrize("m", range(1, 31))
def test_cyclo_minpoly_matches_sympy(m):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]
    assert list(cyclo_minpoly(m)) == [int(c) for c in expected]


def test_cyclo_minpoly_examples():
    assert cyclo_minpoly(1) == (-1, 1)
    assert cyclo_minpoly(2) == (1, 1)
    assert cyclo_minpoly(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("m", range(1, 31))
def test_zeta_has_exact_order(m):
    z = CycloNum.zeta(m)
    assert len(z.coeffs) == euler_phi(m)
    assert z ** m == 1
    assert all(z ** k != 1 for k in range(1, m))


def test_zeta_satisfies_minpoly():
    for m in (3, 5, 8, 12, 15):
        z = CycloNum.zeta(m)
        acc = CycloNum.rational(m, 0)
        for k, c in enumerate(cyclo_minpoly(m)):
            acc = acc + z ** k * c
        assert not acc


@given(cyclonums(), cyclonums(), cyclonums())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


@given(cyclonums(m=15))
def test_inverse(a):
    if a:
        assert a * a.inverse() == 1


def test_cyclonum_against_sympy_numeric():
    z = CycloNum.zeta(12)
    w = z ** 5 + z * Fraction(3, 2) - 2
    num = complex(sympy.N(sympy.exp(2 * sympy.pi * sympy.I * 5 / 12)
                          + Fraction(3, 2) * sympy.exp(2 * sympy.pi * sympy.I / 12) - 2))
    val = sum(complex(float(c)) * complex(sympy.N(sympy.exp(2 * sympy.pi * sympy.I * k / 12)))
              for k, c in enumerate(w.coeffs))
    assert abs(val - num) < 1e-12


def test_lift_and_mixed_conductors():
    z3, z4 = CycloNum.zeta(3), CycloNum.zeta(4)
    s = z3 + z4
    assert s.m == 12
    assert z3 == CycloNum.zeta(12, 4)
    assert z4 * z4 == -1


def test_galois_conjugation():
    z = CycloNum.zeta(5)
    assert z.galois(2) == z ** 2
    with pytest.raises(ValueError):
        z.galois(5)


def test_field_for_small_b_is_rational():
    assert field_for(1)[0] == 1 and field_for(2)[0] == -1
    assert isinstance(field_for(2)[0], Fraction)
    assert isinstance(field_for(3)[0], CycloNum)


# -- Puiseux series -----------------------------------------------------------


def test_ord_pole_examples():
    t = PuiseuxSeries.monomial
    assert ord_pole(t(1, -1) + 1) == 1
    assert ord_pole(t(1, Fraction(-3, 2)) + t(1, -1)) == Fraction(3, 2)
    assert ord_pole(PuiseuxSeries.constant(1) + t(1, 1)) == 0
    z = PuiseuxSeries()
    assert ord_pole(z) == 0 and z.is_zero()


def test_canonical_ramification():
    a = PuiseuxSeries({-2: 1, 4: 3}, 4)
    b = PuiseuxSeries({-1: 1, 2: 3}, 2)
    assert a == b and a.b == 2 and a.terms == b.terms
    assert PuiseuxSeries.from_exponents({Fraction(-1, 2): 1}).b == 2


@given(series(), series())
def test_pole_order_additive(a, b):
    if a and b:
        assert ord_pole(a * b) == max(0, -(a.valuation() + b.valuation()))
        assert (a * b).valuation() == a.valuation() + b.valuation()


@given(series(), series())
def test_sum_ramification_divides_lcm(a, b):
    s = a + b
    from math import lcm
    assert lcm(a.b, b.b) % s.b == 0
    assert all(c for c in s.terms.values())


@given(series())
def test_substitute_scales_pole(a):
    for c in (1, 2, 3):
        assert ord_pole(a.substitute(c)) == c * ord_pole(a)


def test_truncation_bookkeeping():
    a = PuiseuxSeries({-1: 1, 0: 2, 3: 5}).truncate(2)
    assert a.terms == {-1: 1, 0: 2}
    assert a.truncation == 2
    b = a * PuiseuxSeries.monomial(1, -1)
    assert b.truncation == 1


def test_euler_derivative_and_polar_part():
    a = PuiseuxSeries({-3: 2, 0: 1, 1: 4}, 2)
    assert a.euler_derivative().terms == {-3: -3, 1: 2}
    assert a.polar_part().terms == {-3: 2, 0: 1}


@given(rationals)
def test_rational_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_format_rational():
    assert format_rational(Fraction(3, 6)) == "1/2"
    assert format_rational(4) == "4"
