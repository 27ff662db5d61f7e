from fractions import Fraction

import pytest
from hypothesis import given, settings

from wlyinf.errors import ParseError
from wlyinf.parsing import evaluate, parse_expression, parse_polynomial, parse_sequence
from wlyinf.poly import Polynomial, variables

from test_poly import polys


def test_parses_polynomial_with_first_appearance_order():
    f, names = parse_polynomial("x1^7*x2 + x3^3 + x2")
    x1, x2, x3 = variables(3)
    assert names == ["x1", "x2", "x3"]
    assert f == x1 ** 7 * x2 + x3 ** 3 + x2


def test_rational_coefficient():
    f, names = parse_polynomial("3/2*x^2 - y")
    assert names == ["x", "y"]
    assert f.coeff((2, 0)) == Fraction(3, 2)
    assert f.coeff((0, 1)) == -1


def test_double_caret_reports_column_four():
    with pytest.raises(ParseError) as info:
        parse_polynomial("x1^^2")
    assert (info.value.line, info.value.column) == (1, 4)


def test_implicit_multiplication_rejected():
    with pytest.raises(ParseError) as info:
        parse_polynomial("2x")
    assert info.value.column == 2


@pytest.mark.parametrize("text, col", [("x +", 4), ("(x + 1", 7), ("x $ y", 3), ("", 1),
                                       ("x/y", 2), ("x^y", 3)])
def test_syntax_errors(text, col):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text)
    assert info.value.column == col


def test_multiline_position():
    with pytest.raises(ParseError) as info:
        parse_polynomial("x + y\n  + * z")
    assert (info.value.line, info.value.column) == (2, 5)


def test_explicit_variable_order_and_unknown_names():
    f, names = parse_polynomial("y + x^2", ["x", "y"])
    assert f == Polynomial({(2, 0): 1, (0, 1): 1})
    with pytest.raises(ParseError):
        parse_polynomial("y + z", ["x", "y"])


def test_unary_minus_and_parentheses():
    f, _ = parse_polynomial("-(x - 1)^2 + -x")
    x, = variables(1)
    assert f == -(x - 1) ** 2 - x


def test_witness_sequence():
    seq = parse_sequence("1/n^2, -n^4/4, -n^2/2, 0")
    assert seq(10) == (Fraction(1, 100), Fraction(-2500), Fraction(-50), Fraction(0))
    assert evaluate(parse_expression("n/3 - 1"), {"n": Fraction(6)}) == 1


@settings(max_examples=80, deadline=None)
@given(polys(nvars=3, max_terms=5, max_exp=4))
def test_print_parse_round_trip(p):
    names = ["x1", "x2", "x3"]
    q, _ = parse_polynomial(p.to_str(names), names)
    assert q == p
