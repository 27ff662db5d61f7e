"""Branches of a one-dimensional critical locus and their transversal germs.

For a weighted homogeneous top form whose critical locus is a union of
weighted orbits through the origin, each orbit gets a rational
representative, its isotropy order, the germ cut out on a slice through the
representative, local Milnor/Tjurina numbers and the dimensions of the
eigenspaces of the isotropy action on the Milnor algebra.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import (NonInvariantJacobian, NonIsolatedGerm, NonRationalBranch,
                     NotApplicable, NotCurve, StructuralError)
from .ideal import (StandardBasis, eliminate, groebner_basis,
                    local_standard_basis, quotient_staircase, radical_membership,
                    rational_solutions)
from .poly import Polynomial, WeightSystem
from .wly import singular_dimension

log = logging.getLogger(__name__)

SLICE_VALUES = (1, -1, 2, -2, 3, -3)


@dataclass(frozen=True)
class BranchData:
    representative: Tuple[Fraction, ...]
    isotropy_order: int
    slice_index: int
    germ: Polynomial
    germ_weights: Tuple[int, ...]
    mu0: int
    tau0: int
    eigen_dims: Tuple[int, ...]

    @property
    def d(self) -> int:
        return self.isotropy_order


def isotropy_order(a: Sequence, w) -> int:
    g = 0
    for ai, wi in zip(a, w):
        if ai:
            g = gcd(g, wi)
    if g == 0:
        raise ValueError("the origin has no isotropy order")
    return g


def parse_point(text: str) -> Tuple[Fraction, ...]:
    """Parse ``"0,-1,1/2,0"`` into exact rationals."""
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad point {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# germs


def transversal_germ(top: Polynomial, a: Sequence, w) -> Tuple[Polynomial, Tuple[int, ...], int]:
    """Restrict ``top`` to the slice ``x_m = a_m`` and recentre at ``a``.

    ``m`` is the index with ``a_m != 0`` of smallest weight (smallest index on
    ties).  Returns ``(germ, germ_weights, m)``.
    """
    w = w if isinstance(w, WeightSystem) else WeightSystem(tuple(w))
    a = tuple(Fraction(x) for x in a)
    if len(a) != top.nvars:
        raise StructuralError("point and polynomial have different lengths")
    nz = [i for i, x in enumerate(a) if x]
    if not nz:
        raise ValueError("the origin is not a branch representative")
    m = min(nz, key=lambda i: (w[i], i))
    # slice transversality: the orbit tangent has m-th entry w_m * a_m
    assert w[m] * a[m] != 0
    shift = tuple(Fraction(0) if i == m else x for i, x in enumerate(a))
    germ = top.translate(shift).restrict(m, a[m])
    if germ.constant_term() != 0 or any(sum(mm) == 1 for mm in germ.monomials()):
        raise ValueError(f"{a} is not a critical point of the top form on its zero set")
    return germ, w.without(m), m


def milnor_basis(germ: Polynomial) -> StandardBasis:
    return local_standard_basis([g for g in germ.gradient()] or [Polynomial.zero(germ.nvars)])


def local_milnor(germ: Polynomial, sb: StandardBasis | None = None) -> int:
    if germ.nvars == 0:
        return 0
    sb = sb or milnor_basis(germ)
    st = quotient_staircase(sb)
    if not st.is_finite:
        raise NonIsolatedGerm(f"germ {germ} does not have an isolated singularity")
    return len(st)


def local_tjurina(germ: Polynomial) -> int:
    if germ.nvars == 0:
        return 0
    st = quotient_staircase(local_standard_basis([germ] + germ.gradient()))
    if not st.is_finite:
        raise NonIsolatedGerm(f"germ {germ} does not have an isolated singularity")
    return len(st)


def _graded_pieces(p: Polynomial, weights: Sequence[int], d: int):
    pieces = {}
    for m, c in p.items():
        r = sum(a * b for a, b in zip(m, weights)) % d
        pieces.setdefault(r, {})[m] = c
    return [Polynomial._raw(t, p.nvars) for t in pieces.values()]


def eigenspace_dims(germ: Polynomial, germ_weights: Sequence[int], d: int, sign: int = 1,
                    sb: StandardBasis | None = None) -> Tuple[int, ...]:
    """Dimensions of the eigenspaces of the order-``d`` diagonal action on M(germ).

    ``y^a`` is counted in slot ``sign * <germ_weights, a> mod d``.  The
    Jacobian ideal is checked to be stable under the action first.
    """
    if d < 1:
        raise ValueError("isotropy order must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if len(germ_weights) != germ.nvars:
        raise StructuralError("germ weights do not match germ variables")
    if germ.nvars == 0:
        return tuple([0] * d)
    sb = sb or milnor_basis(germ)
    if d > 1:
        for g in sb.generators:
            for piece in _graded_pieces(g, germ_weights, d):
                if not sb.contains(piece):
                    raise NonInvariantJacobian(
                        f"Jacobian ideal of {germ} is not stable under the order-{d} action")
    st = quotient_staircase(sb)
    if not st.is_finite:
        raise NonIsolatedGerm(f"germ {germ} does not have an isolated singularity")
    dims = [0] * d
    for m in st:
        dims[(sign * sum(a * b for a, b in zip(m, germ_weights))) % d] += 1
    return tuple(dims)


def suspended_dims(eigen_dims: Sequence[int], d: int, k: int) -> Tuple[int, ...]:
    """Eigenspace dimensions of ``g + x0^k``: slot l sums slots l - t for t = 0..k-2."""
    if k < 2:
        raise NotApplicable("suspension by x0^k needs k >= 2; for k = 1 the germ is smooth")
    if len(eigen_dims) != d:
        raise ValueError("eigen_dims must have d entries")
    return tuple(sum(eigen_dims[(l - t) % d] for t in range(k - 1)) for l in range(d))


def branch_data(top: Polynomial, a: Sequence, w, eigen_sign: int = 1) -> BranchData:
    w = w if isinstance(w, WeightSystem) else WeightSystem(tuple(w))
    a = tuple(Fraction(x) for x in a)
    germ, gw, m = transversal_germ(top, a, w)
    d = isotropy_order(a, w.weights)
    sb = milnor_basis(germ)
    mu0 = local_milnor(germ, sb)
    tau0 = local_tjurina(germ)
    dims = eigenspace_dims(germ, gw, d, eigen_sign, sb)
    return BranchData(a, d, m, germ, gw, mu0, tau0, dims)


# ---------------------------------------------------------------------------
# orbit search


def orbit_ideal(a: Sequence, w) -> Tuple[Polynomial, ...]:
    """Reduced grevlex basis of the ideal of the closure of the weighted orbit of ``a``."""
    w = w if isinstance(w, WeightSystem) else WeightSystem(tuple(w))
    n = len(a)
    big = n + 1  # variable 0 is the orbit parameter
    v = Polynomial.var(0, big)
    gens = []
    for i, ai in enumerate(a):
        xi = Polynomial.var(i + 1, big)
        gens.append(xi - (v ** w[i]).scale(Fraction(ai)) if ai else xi)
    elim = eliminate(gens, 1)
    down = [g.restrict(0, 0) for g in elim]
    return groebner_basis(down).generators


def _fingerprint(ideal_gens: Iterable[Polynomial]) -> Tuple[str, ...]:
    return tuple(sorted(str(g) for g in ideal_gens))


def _rep_key(a):
    height = max(max(abs(x.numerator), x.denominator) for x in a if x)
    return (height, sum(1 for x in a if x < 0), tuple(-x for x in a))


def _slice_points(grads: List[Polynomial], m: int, c: int):
    sliced = [g.restrict(m, c) for g in grads]
    sliced = [g for g in sliced if g]
    if any(g.is_constant() for g in sliced):
        return []
    if not sliced:
        return None
    sols = rational_solutions(sliced)
    if sols is None:
        return None
    return [s[:m] + (Fraction(c),) + s[m:] for s in sols]


def find_branches(top: Polynomial, w, hints: Optional[Sequence[Sequence]] = None,
                  eigen_sign: int = 1, slice_values: Sequence[int] = SLICE_VALUES,
                  check_complete: bool = True) -> List[BranchData]:
    """One :class:`BranchData` per one-dimensional component of V(grad top).

    Rational representatives are searched on the slices ``x_m = c``; orbits
    are identified by their closure ideals.  Raises :class:`NonRationalBranch`
    when the found orbits do not exhaust the critical locus.
    """
    w = w if isinstance(w, WeightSystem) else WeightSystem(tuple(w))
    if len(w) != top.nvars:
        raise StructuralError("weights do not match the number of variables")
    dim = singular_dimension(top, w)
    if dim != 1:
        raise NotCurve(f"critical locus of {top} has dimension {dim}, not 1")
    grads = [g for g in top.gradient() if g]
    n = top.nvars

    candidates = []
    for hint in hints or ():
        a = tuple(Fraction(x) for x in hint)
        if len(a) != n:
            raise StructuralError(f"branch point {hint} has {len(a)} coordinates, expected {n}")
        if not any(a):
            raise ValueError("branch point must be nonzero")
        if any(g.evaluate(a) for g in grads):
            raise ValueError(f"branch point {hint} is not a critical point of the top form")
        candidates.append(a)
    for m in range(n):
        for c in slice_values:
            pts = _slice_points(grads, m, c)
            if pts:
                candidates.extend(pts)

    orbits = {}
    for a in candidates:
        # cheap test first: a point already in a known orbit closure
        known = None
        for fp, (gens, reps) in orbits.items():
            if all(g.evaluate(a) == 0 for g in gens):
                known = fp
                break
        if known is not None:
            orbits[known][1].append(a)
            continue
        gens = orbit_ideal(a, w)
        fp = _fingerprint(gens)
        orbits.setdefault(fp, (gens, []))[1].append(a)

    if check_complete:
        _check_exhausted(grads, [gens for gens, _ in orbits.values()], n)

    result = []
    for fp in sorted(orbits):
        gens, reps = orbits[fp]
        rep = min(reps, key=_rep_key)
        result.append(branch_data(top, rep, w, eigen_sign))
    log.debug("found %d branch(es) for %s", len(result), top)
    return result


def _check_exhausted(grads, orbit_gens, n):
    """Every product of orbit-ideal generators must vanish on V(grad top)."""
    if not orbit_gens:
        raise NonRationalBranch(
            "no rational point found on the critical locus; supply --branch-point")
    products = [Polynomial.constant(1, n)]
    for gens in orbit_gens:
        products = [p * g for p in products for g in gens]
    for p in products:
        if not radical_membership(p, grads):
            raise NonRationalBranch(
                "the rational orbits found do not cover the critical locus of the top form; "
                "supply the missing component with --branch-point")
