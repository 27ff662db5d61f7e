from fractions import Fraction
from hypothesis import given, settings, strategies as st

from wlyinf.poly import decompose, variables
from wlyinf.wly import (analyze, check_vanishing_gradient_sequence,
                        sing_locus_is_isolated, singular_dimension)


def test_dual_weight_instance(x3):
    x1, x2, x3_ = x3
    f = x1 ** 7 * x2 + x3_ ** 3 + x2
    for w in [(2, 1, 5), (1, 2, 3)]:
        an = analyze(f, w)
        assert an.is_wly and an.sing_dim == 1 and an.quasi_tame


def test_four_variable_instances(x4):
    x1, x2, x3, x4_ = x4
    base = x1 ** 3 + x1 * x2 + x1 * x3 ** 2 + x3 * x4_ ** 2
    for low in (x2, x2 + x1, x3):
        assert analyze(base + low, (1, 2, 1, 1)).is_wly


def test_rejects_non_wly():
    x1, x2 = variables(2)
    an = analyze(x1 ** 2 * x2 ** 2 + x1, (1, 1))
    assert not an.is_wly
    assert an.sing_dim == 1


def test_two_dimensional_singular_locus_never_wly(x3):
    x1, x2, x3_ = x3
    an = analyze(x1 ** 2 * x2 ** 2 + x3_, (1, 1, 1))
    assert an.sing_dim == 2 and not an.is_wly


def test_isolated_top_form(x3):
    x1, x2, x3_ = x3
    assert not sing_locus_is_isolated(x1 ** 7 * x2 + x3_ ** 3)
    assert sing_locus_is_isolated(x1 ** 2 + x2 ** 3 + x3_ ** 4, (6, 4, 3))
    assert singular_dimension(x1 ** 7 * x2 + x3_ ** 3) == 1


@settings(max_examples=15, deadline=None)
@given(st.fractions(-4, 4, max_denominator=3).filter(lambda c: c not in (0, -1)))
def test_scaling_gap_part_preserves_wly(c):
    x1, x2, x3 = variables(3)
    f = x1 ** 7 * x2 + x3 ** 3 + x2
    dec = decompose(f, (2, 1, 5))
    g = f + dec.gap_part.scale(c)
    assert analyze(g, (2, 1, 5)).is_wly


def test_vanishing_gradient_sequence(x4):
    x1, x2, x3, x4_ = x4
    h = x1 ** 3 + x1 * x2 + x1 * x3 ** 2 + x3 * x4_ ** 2 + x3

    def seq(n):
        return (Fraction(1, n * n), Fraction(-n ** 4, 4), Fraction(-n * n, 2), 0)

    ok, rows = check_vanishing_gradient_sequence(h, seq)
    assert ok
    assert [r[0] for r in rows] == [10, 100, 1000]
    # a bounded sequence is not a witness
    ok, _ = check_vanishing_gradient_sequence(h, lambda n: (1, 1, 1, 1))
    assert not ok
