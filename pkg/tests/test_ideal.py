from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from wlyinf.ideal import (BudgetExceeded, MonomialOrder, eliminate, groebner_basis,
                          is_unit_ideal, krull_dimension, local_standard_basis,
                          quotient_staircase, radical_membership, rational_solutions)
from wlyinf.poly import Polynomial, variables

from conftest import to_sympy
from test_poly import polys


def from_sympy(expr, syms):
    p = sympy.Poly(expr, *syms)
    return Polynomial({m: Fraction(int(c.p), int(c.q)) for m, c in p.terms()}, len(syms))


def test_gradient_basis_of_top_form(x3):
    x1, x2, x3_ = x3
    top = x1 ** 7 * x2 + x3_ ** 3
    sb = groebner_basis(top.gradient())
    assert set(sb.leading_monomials()) == {(7, 0, 0), (6, 1, 0), (0, 0, 2)}
    assert krull_dimension(sb) == 1
    assert not quotient_staircase(sb).is_finite


def test_local_basis_and_staircase():
    y1, y3 = variables(2)
    sb = local_standard_basis([(y1 ** 6).scale(7), (y3 ** 2).scale(3)])
    st_ = quotient_staircase(sb)
    assert len(st_) == 12
    assert set(st_) == {(a, b) for a in range(6) for b in range(2)}
    # a unit in the local ring: 3y^2 - 2y = y(3y - 2)
    y, = variables(1)
    assert set(quotient_staircase(local_standard_basis([(y ** 2).scale(3) - y.scale(2)]))) == {(0,)}


def test_unit_ideal_and_dimension():
    x, y = variables(2)
    assert is_unit_ideal([x, x - 1])
    sb = groebner_basis([x, x - 1])
    assert sb.is_unit and krull_dimension(sb) == -1
    assert krull_dimension(groebner_basis([x * y])) == 1
    assert krull_dimension(groebner_basis([x, y])) == 0


def test_radical_membership():
    x, y = variables(2)
    assert radical_membership(x, [x ** 3])
    assert not radical_membership(y, [x ** 3])
    assert radical_membership(x * y, [x ** 2, y ** 5])
    assert radical_membership(Polynomial.zero(2), [x])


def test_normal_form_membership():
    x, y = variables(2)
    sb = groebner_basis([x ** 2 - y, y ** 2 - 1])
    assert sb.contains(x ** 4 - 1)
    assert not sb.contains(x - 1)


def test_budget():
    x, y, z = variables(3)
    gens = [x ** 5 + y ** 4 + z ** 3 - 1, x ** 3 + y ** 3 + z ** 2 - 1, x * y * z - 2]
    with pytest.raises(BudgetExceeded):
        groebner_basis(gens, budget=5)


def test_elimination_and_rational_points():
    x, y = variables(2)
    elim = eliminate([x - y ** 2, x - 4], 1)
    assert any(g == Polynomial({(0, 2): 1}) - 4 for g in elim)
    pts = rational_solutions([x ** 2 - 4, y - x])
    assert pts == [(Fraction(-2), Fraction(-2)), (Fraction(2), Fraction(2))]
    assert rational_solutions([x ** 2 - 2, y]) == []
    assert rational_solutions([x * y]) is None


@settings(max_examples=40, deadline=None)
@given(st.lists(polys(nvars=3, max_terms=3, max_exp=2), min_size=1, max_size=3))
def test_reduced_basis_matches_sympy(gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    syms = sympy.symbols("a b c")
    ours = groebner_basis(gens)
    theirs = sympy.groebner([to_sympy(g, syms) for g in gens], *syms, order="grevlex")
    expected = set()
    for e in theirs.exprs:
        p = from_sympy(e, syms)
        lc = p.coeff(max(p.monomials(), key=MonomialOrder.grevlex(3).key))
        expected.add(p.scale(1 / lc))
    assert set(ours.generators) == expected


@settings(max_examples=40, deadline=None)
@given(st.lists(polys(nvars=2, max_terms=3, max_exp=3), min_size=1, max_size=3),
       polys(nvars=2, max_terms=3, max_exp=3))
def test_ideal_contains_combinations(gens, mult):
    gens = [g for g in gens if g]
    if not gens:
        return
    sb = groebner_basis(gens)
    assert sb.contains(gens[0] * mult)
    for g in gens:
        assert sb.contains(g)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=4))
def test_monomial_ideal_staircase_count(lms):
    x, y = variables(2)
    gens = [Polynomial.monomial(m) for m in lms] + [x ** 4, y ** 4]
    st_ = quotient_staircase(groebner_basis(gens))
    brute = [(a, b) for a in range(4) for b in range(4)
             if not any(a >= m[0] and b >= m[1] for m in lms)]
    assert sorted(st_) == sorted(brute)
