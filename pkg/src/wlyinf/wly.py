"""Weighted Lê-Yomdin-at-infinity test and the singular structure of the top form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .ideal import MonomialOrder, groebner_basis, krull_dimension, radical_membership
from .poly import Polynomial, WeightedDecomposition, decompose


@dataclass(frozen=True)
class WlyAnalysis:
    dec: WeightedDecomposition
    is_wly: bool
    sing_dim: int
    quasi_tame: bool

    @property
    def w(self):
        return self.dec.w


def singular_dimension(top: Polynomial, w=None) -> int:
    """Dimension of the critical locus V(grad top); -1 when it is empty."""
    grads = [g for g in top.gradient() if g]
    if not grads:
        return top.nvars
    order = MonomialOrder.wdegrevlex(tuple(w)) if w is not None else None
    return krull_dimension(groebner_basis(grads, order))


def check_wly(dec: WeightedDecomposition) -> WlyAnalysis:
    """Decide whether grad f_N = 0 and f_{N-k} = 0 meet only at the origin.

    Every coordinate must lie in the radical of the ideal generated by the
    partials of the top form and the gap part; an empty locus passes.
    """
    top, gap = dec.top, dec.gap_part
    grads = [g for g in top.gradient() if g]
    sing_dim = singular_dimension(top, dec.w)
    if sing_dim >= 2:
        # a curve's worth of points of V(grad f_N) always survives the extra equation
        is_wly = False
    else:
        gens = grads + [gap]
        is_wly = all(radical_membership(Polynomial.var(i, top.nvars), gens)
                     for i in range(top.nvars))
    return WlyAnalysis(dec, is_wly, sing_dim, is_wly)


def analyze(f: Polynomial, w) -> WlyAnalysis:
    return check_wly(decompose(f, w))


def sing_locus_is_isolated(top: Polynomial, w=None) -> bool:
    """True iff the top form has at most an isolated critical point (at the origin)."""
    return singular_dimension(top, w) <= 0


def gradient_norm_sq(f: Polynomial, point: Sequence) -> Fraction:
    return sum((g.evaluate(point) ** 2 for g in f.gradient()), Fraction(0))


def check_vanishing_gradient_sequence(f: Polynomial, sequence: Callable[[int], Sequence],
                                      samples=(10, 100, 1000), threshold=Fraction(1, 10 ** 6)):
    """Exact check that a real sequence escapes to infinity while grad f tends to zero.

    ``sequence(n)`` returns a rational point.  The squared point norms must
    increase strictly, the squared gradient norms must decrease strictly and
    the last one must fall below ``threshold``.  Returns ``(ok, rows)`` with
    one ``(n, |x|^2, |grad f(x)|^2)`` row per sample.
    """
    rows = []
    for n in samples:
        pt = [Fraction(c) for c in sequence(n)]
        rows.append((n, sum((c * c for c in pt), Fraction(0)), gradient_norm_sq(f, pt)))
    norms = [r[1] for r in rows]
    grads = [r[2] for r in rows]
    ok = (all(a < b for a, b in zip(norms, norms[1:]))
          and all(a > b for a, b in zip(grads, grads[1:]))
          and grads[-1] < threshold)
    return ok, rows
