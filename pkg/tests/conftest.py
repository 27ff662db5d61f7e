import itertools

import pytest
import sympy

from wlyinf.poly import Polynomial, variables


def to_sympy(p: Polynomial, syms):
    expr = sympy.Integer(0)
    for m, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            term *= s ** e
        expr += term
    return expr


def sympy_jacobian_dimension(p: Polynomial):
    """dim Q[x]/(grad p) from a sympy Groebner basis; None when infinite."""
    syms = sympy.symbols(f"z0:{p.nvars}")
    grads = [sympy.diff(to_sympy(p, syms), s) for s in syms]
    grads = [g for g in grads if g != 0]
    if not grads:
        return None
    gb = sympy.groebner(grads, *syms, order="grevlex")
    lms = [sympy.Poly(g, *syms).monoms(order="grevlex")[0] for g in gb.exprs]
    bounds = []
    for i in range(p.nvars):
        pure = [m[i] for m in lms if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    count = 0
    for m in itertools.product(*[range(b) for b in bounds]):
        if not any(all(a >= b for a, b in zip(m, lm)) for lm in lms):
            count += 1
    return count


def brute_staircase_slots(monomials, weights, d, sign=1):
    dims = [0] * d
    for m in monomials:
        dims[(sign * sum(a * b for a, b in zip(m, weights))) % d] += 1
    return tuple(dims)


@pytest.fixture
def x3():
    return variables(3)


@pytest.fixture
def x4():
    return variables(4)


# one PASS/FAIL line per acceptance criterion in the terminal summary
_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance" in report.nodeid and name.startswith("test_criterion_"):
        if report.when == "call" or report.outcome == "failed":
            num = int(name.split("_")[2])
            if report.outcome == "failed" or num not in _criteria:
                _criteria[num] = (report.outcome.upper(), report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    from test_acceptance import TITLES
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        outcome, duration = _criteria[num]
        status = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status} - {TITLES[num]} [{duration:.2f}s]")
