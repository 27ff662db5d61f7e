from fractions import Fraction
from functools import reduce
from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from wlyinf.branches import find_branches
from wlyinf.errors import DegenerateWeights, HypothesisFailure
from wlyinf.euler import (DIRECT, INFINITE, ISOLATED, K1, VIRTUAL, EigenBranch,
                          Settings, chi_fiber, chi_isolated, chi_tilde, chi_virtual,
                          chi_virtual_eigen, is_isolated_weighted, iso_poly_exists, monomials_of_degree,
                          mu_direct, oracle_total_milnor, poincare_coeffs,
                          probe_with_witness, support_admits_isolated, total_milnor,
                          total_milnor_abstract, weight_product)
from wlyinf.poly import Polynomial, WeightSystem, decompose, variables
from wlyinf.wly import analyze

from conftest import sympy_jacobian_dimension

BIG_W = (1, 24, 33, 58)


def big_top():
    x1, x2, x3, x4 = variables(4)
    return x1 ** 265 + x1 * x2 ** 11 + x1 * x3 ** 8 + x3 * x4 ** 4


def dual_f():
    x1, x2, x3 = variables(3)
    return x1 ** 7 * x2 + x3 ** 3 + x2


def f1():
    x1, x2, x3, x4 = variables(4)
    return x1 ** 3 + x1 * x2 + x1 * x3 ** 2 + x3 * x4 ** 2 + x2


# -- Poincare series and virtual characteristics


def test_poincare_examples():
    assert poincare_coeffs((1, 1), 2, 5).coeffs == (1, 0, 0, 0, 0, 0)
    p = poincare_coeffs((1, 2, 3), 9, 4)
    assert p[0] == 1 and p[1] == 1
    with pytest.raises(DegenerateWeights):
        poincare_coeffs((1, 2, 3), 3, 4)


def test_big_poincare_series_is_a_polynomial():
    w = WeightSystem(BIG_W)
    degree = sum(265 - 2 * wi for wi in BIG_W)
    p = poincare_coeffs(w, 265, degree + 600)
    assert p.is_polynomial_below(degree)
    assert p[degree] != 0
    assert all(c >= 0 for c in p.coeffs)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.integers(1, 3))
def test_poincare_series_of_brieskorn_type_counts_milnor_algebra(ws, mult):
    # every weight divides N: P(t) is the Hilbert series of a Brieskorn Milnor algebra
    ws = tuple(ws)
    assume(reduce(gcd, ws) == 1)
    N = mult * reduce(lambda a, b: a * b // gcd(a, b), ws) * 2
    assume(N > max(ws))
    p = poincare_coeffs(ws, N, sum(N - 2 * wi for wi in ws) + 5)
    assert p[0] == 1
    assert all(c >= 0 for c in p.coeffs)
    assert sum(p.coeffs) == weight_product(ws, N)


def test_poincare_coefficients_can_be_negative():
    assert min(poincare_coeffs((1, 3), 5, 10).coeffs) < 0


def test_chi_virtual_examples():
    assert chi_virtual((1, 1, 1, 1), 3, 4) == -15
    assert chi_virtual((1, 2, 1, 1), 3, 4) == -3


def test_chi_virtual_counts_the_constant_coefficient():
    # the window starts at s = 0, so P(t) = 1 contributes
    assert chi_virtual((1, 1), 2, 3) == 0
    assert chi_virtual((1, 1), 2, 3) == chi_isolated((1, 1), 2)


@pytest.mark.parametrize("w, N, value", [((1, 1, 1, 1), 3, -15), ((1, 2, 1, 1), 3, -3)])
def test_chi_virtual_stabilizes(w, N, value):
    n = len(w) - 1
    assert 1 + (-1) ** n * weight_product(w, N) == value
    assert {chi_virtual(w, N, m) for m in range(n + 1, 13)} == {value}


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([((1, 1, 1), 4), ((1, 2, 3), 9), ((2, 1, 5), 15), ((1, 1, 2), 6),
                        ((2, 3), 12), ((1, 2, 1, 1), 3)]),
       st.integers(0, 6))
def test_stabilization_when_isolated_member_exists(case, extra):
    w, N = case
    assert iso_poly_exists(w, N).exists
    n = len(w) - 1
    assert chi_virtual(w, N, n + 1 + extra) == chi_isolated(w, N)


# -- isolated members


def test_iso_poly_examples():
    x1, x2, x3 = variables(3)
    assert probe_with_witness((2, 1, 5), 15, x1 ** 7 * x2 + x2 ** 15 + x3 ** 3)
    assert probe_with_witness((1, 2, 3), 9, x1 ** 9 + x1 * x2 ** 4 + x3 ** 3)
    for w, N in [((2, 1, 5), 15), ((1, 2, 3), 9)]:
        probe = iso_poly_exists(w, N)
        assert probe.exists and is_isolated_weighted(probe.witness, w)
    assert not iso_poly_exists(BIG_W, 265).exists


def test_support_criterion():
    assert support_admits_isolated((1, 1, 1), 3)
    assert not support_admits_isolated(BIG_W, 265)
    assert monomials_of_degree((1, 2), 4) == [(0, 2), (2, 1), (4, 0)]


def test_iso_probe_is_deterministic():
    a = iso_poly_exists((1, 2, 3), 9, seed=7)
    b = iso_poly_exists((1, 2, 3), 9, seed=7)
    assert a.witness == b.witness


# -- Euler characteristics


def test_chi_fiber_examples():
    x1, x2, x3 = variables(3)
    brs = find_branches(x1 ** 7 * x2 + x3 ** 3, (1, 2, 3))
    assert chi_fiber((1, 2, 3), 9, brs).value == 3
    big = find_branches(big_top(), BIG_W)
    assert chi_fiber(BIG_W, 265, big).value == -66250
    assert chi_fiber((1, 1), 2, []).value == 0


def test_chi_tilde_examples():
    x1, x2, x3 = variables(3)
    brs = find_branches(x1 ** 7 * x2 + x3 ** 3, (1, 2, 3))
    assert chi_tilde((1, 2, 3), 9, 7, brs).value == -123
    assert chi_tilde((1, 2, 1, 1), 3, 1, []).value == 9
    big = find_branches(big_top(), BIG_W)
    for k in (2, 3, 4, 100, 264):
        assert chi_tilde(BIG_W, 265, k, big).value == 17560490 - 265 * k


def test_conjectural_flag_for_large_defect():
    # a branch whose germ has mu0 - tau0 = 2 and no isolated member of type (w; N)
    b = EigenBranch(3, (2, 2, 2), 6, 4)
    chi = chi_fiber(BIG_W, 265, [b])
    assert chi.conjectural and chi.method == "virtual"


# -- total Milnor number


@pytest.mark.parametrize("w", [(2, 1, 5), (1, 2, 3)])
def test_dual_weights_give_fourteen(w):
    report = total_milnor(analyze(dual_f(), w))
    assert report.mu == 14
    assert report.formula_path == DIRECT
    assert report.chi_FN == 3
    assert all(v == 14 for _, v in report.cross_checks)


def test_cross_formula_values_on_second_weight_system():
    report = total_milnor(analyze(dual_f(), (1, 2, 3)))
    assert report.chi_tilde == -123
    assert weight_product((1, 2, 3), 9) == 56
    data = [EigenBranch.of(b) for b in report.branches]
    assert mu_direct((1, 2, 3), 9, 7, data) == 14
    assert Fraction(-(-123 - 3), 9) == 14


def test_four_variable_instance_k1():
    report = total_milnor(analyze(f1(), (1, 2, 1, 1)))
    assert report.formula_path == K1
    assert (report.mu, report.chi_FN, report.chi_tilde) == (3, 0, 9)
    assert oracle_total_milnor(f1()) == 3


def test_abstract_big_example():
    for k in (2, 100, 264):
        report = total_milnor_abstract(BIG_W, 265, k, big_top())
        assert report.mu == 66516 - k
        assert report.chi_FN == -66250
        assert report.chi_tilde == 17560490 - 265 * k
        assert report.formula_path == VIRTUAL
    const, coef, _ = report.chi_tilde_affine
    assert (const, coef) == (17560490, -265)
    const, coef, _ = report.mu_affine
    assert (const, coef) == (66516, -1)


def test_abstract_mode_validation():
    x1, x2 = variables(2)
    with pytest.raises(ValueError):
        total_milnor_abstract((1, 1), 3, 3, x1 ** 3 + x2 ** 3)
    with pytest.raises(ValueError):
        total_milnor_abstract((1, 1), 4, 1, x1 ** 3 + x2 ** 3)


def test_isolated_top_form_path():
    x1, x2, x3 = variables(3)
    f = x1 ** 2 + x2 ** 3 + x3 ** 4 + x1 * x2
    report = total_milnor(analyze(f, (6, 4, 3)))
    assert report.formula_path == ISOLATED
    assert report.mu == weight_product((6, 4, 3), 12) == oracle_total_milnor(f)


def test_oracle_examples():
    x1, x2, x3 = variables(3)
    assert oracle_total_milnor(dual_f()) == 14
    assert oracle_total_milnor(x1 ** 2 * x2 + x3 ** 3 + x2) == 4
    assert oracle_total_milnor(x1 ** 2 * x2) == INFINITE


def test_hypothesis_failure_is_gated(monkeypatch):
    import wlyinf.euler as E

    report = total_milnor(analyze(dual_f(), (1, 2, 3)))
    report.conjectural = True
    with pytest.raises(HypothesisFailure):
        E._gate(report, Settings())
    E._gate(report, Settings(allow_conjectural=True))


# -- eigen-sign adjudication


def sign_instance():
    x1, x2, x3 = variables(3)
    return x1 ** 8 + x3 ** 8 + x1 ** 3 * x2 + x2 * x3 ** 3 + x2, (1, 5, 1)


def test_sign_instance_has_asymmetric_eigenspaces():
    f, w = sign_instance()
    (b,) = find_branches(decompose(f, w).top, w)
    assert b.d == 5
    assert b.eigen_dims == (1, 2, 1, 0, 0)
    assert b.eigen_dims != tuple(b.eigen_dims[-i % 5] for i in range(5))


def test_plus_sign_matches_oracle():
    f, w = sign_instance()
    oracle = oracle_total_milnor(f)
    assert oracle == 27 == sympy_jacobian_dimension(f)
    assert total_milnor(analyze(f, w), settings=Settings(eigen_sign=1)).mu == oracle


def test_minus_sign_is_inconsistent():
    f, w = sign_instance()
    an = analyze(f, w)
    with pytest.raises(ArithmeticError):
        total_milnor(an, settings=Settings(eigen_sign=-1))
    # the virtual-Euler value oscillates through non-integers in m
    brs = [EigenBranch.of(b) for b in find_branches(an.dec.top, w, eigen_sign=-1)]
    values = {chi_virtual_eigen(w, 8, brs, m) for m in range(3, 9)}
    assert len(values) > 1


# -- oracle agreement battery and structural properties


def battery():
    x1, x2, x3 = variables(3)
    y1, y2, y3, y4 = variables(4)
    return [
        (dual_f(), (2, 1, 5)),
        (dual_f(), (1, 2, 3)),
        (x1 ** 2 * x2 + x3 ** 3 + x2, (1, 1, 1)),
        (x1 ** 3 * x2 + x3 ** 4 + x2 ** 2, (1, 1, 1)),
        (x1 ** 3 * x2 + x3 ** 4 + x2, (1, 1, 1)),
        (x1 ** 2 * x2 + x2 ** 2 * x3 ** 3 + x1 ** 3 + x3 ** 9 + x2 ** 2, (3, 3, 1)),
        (x1 ** 2 * x2 + x2 ** 2 * x3 ** 3 + x1 ** 3 + x3 ** 9 + x2, (3, 3, 1)),
        (sign_instance()[0], (1, 5, 1)),
        (f1(), (1, 2, 1, 1)),
        (y1 ** 3 + y1 * y2 + y1 * y3 ** 2 + y3 * y4 ** 2 + y3, (1, 2, 1, 1)),
    ]


@pytest.mark.parametrize("f, w", battery())
def test_formula_matches_oracle(f, w):
    an = analyze(f, w)
    assert an.is_wly
    report = total_milnor(an)
    assert report.mu == oracle_total_milnor(f)
    for b in report.branches:
        assert sum(b.eigen_dims) == b.mu0


@settings(max_examples=12, deadline=None)
@given(st.integers(3, 5), st.data())
def test_usual_weights_reduction(N, data):
    k = data.draw(st.integers(1, N - 1))
    c = data.draw(st.sampled_from([1, -1, 2, 3]))
    extra = data.draw(st.sampled_from([0, 1, -2]))
    x1, x2, x3 = variables(3)
    top = x1 ** (N - 1) * x2 + x3 ** N
    low = (x2 ** (N - k)).scale(c) + (x1 ** (N - k)).scale(extra)
    f = top + low
    an = analyze(f, (1, 1, 1))
    assume(an.is_wly)
    report = total_milnor(an)
    mu0 = sum(b.mu0 for b in report.branches)
    assert report.mu == (N - 1) ** 3 - k * mu0
    assert report.mu == oracle_total_milnor(f)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([1, -1, 2, Fraction(1, 2)]), st.sampled_from([0, 1, -3]),
       st.sampled_from([0, 1, 5]))
def test_milnor_number_ignores_lower_parts(c, a, b):
    x1, x2, x3 = variables(3)
    top = x1 ** 7 * x2 + x3 ** 3
    f = top + x2.scale(c) + Polynomial.constant(b, 3)
    g = top + x2 + Polynomial.constant(a, 3)
    assert oracle_total_milnor(f) == oracle_total_milnor(g) == 14
    assert total_milnor(analyze(f, (2, 1, 5))).mu == 14


def test_mixed_path_agrees_when_forced(monkeypatch):
    import dataclasses

    import wlyinf.euler as E

    an = analyze(dual_f(), (1, 2, 3))
    (b,) = find_branches(an.dec.top, (1, 2, 3))
    b = dataclasses.replace(b, tau0=b.mu0 - 1)
    real = E.iso_poly_exists

    def probe(w, N, *args, **kwargs):
        if tuple(w) == (1, 2, 3):
            return E.IsoProbe(False, None, "forced")
        return real(w, N, *args, **kwargs)

    monkeypatch.setattr(E, "iso_poly_exists", probe)
    report = E.total_milnor(an, [b])
    assert report.formula_path == E.MIXED
    assert report.mu == 14 and not report.conjectural


def test_conjectural_path_is_gated_when_forced(monkeypatch):
    import dataclasses

    import wlyinf.euler as E

    an = analyze(dual_f(), (1, 2, 3))
    (b,) = find_branches(an.dec.top, (1, 2, 3))
    b = dataclasses.replace(b, tau0=b.mu0 - 2)
    monkeypatch.setattr(E, "iso_poly_exists", lambda *a, **k: E.IsoProbe(False, None, "forced"))
    with pytest.raises(HypothesisFailure):
        E.total_milnor(an, [b])
    report = E.total_milnor(an, [b], Settings(allow_conjectural=True))
    assert report.formula_path == E.CONJECTURAL and report.conjectural
    assert report.mu == 14
