"""Euler characteristics of the affine Milnor fibres and the total Milnor number.

The total Milnor number of a WLY-at-infinity polynomial is recovered from the
Euler characteristics of two weighted homogeneous Milnor fibres: ``{f_N = 1}``
and ``{f~ = 1}`` where ``f~`` is the homogenization.  Each of those is
computed either from the weights alone (isolated case), from eigenspace
dimensions of the transversal Milnor algebras, or from virtual Euler
characteristics of the Poincaré series.  :func:`oracle_total_milnor` is an
independent brute-force check.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .branches import BranchData, find_branches, suspended_dims
from .errors import DegenerateWeights, HypothesisFailure, StructuralError
from .ideal import (BudgetExceeded, MonomialOrder, groebner_basis, krull_dimension,
                    quotient_staircase)
from .poly import Polynomial, WeightSystem
from .wly import WlyAnalysis, singular_dimension

log = logging.getLogger(__name__)

INFINITE = float("inf")

# formula paths, in decision order
ISOLATED = "isolated-product"
K1 = "k1-cyclic-cover"
DIRECT = "direct-eigen-sum"
VIRTUAL = "virtual-euler"
MIXED = "mixed"
CONJECTURAL = "conjectural-virtual-euler"


def _ws(w) -> WeightSystem:
    return w if isinstance(w, WeightSystem) else WeightSystem(tuple(w))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def weight_product(w, N: int) -> Fraction:
    """The product of ``(N - w_i) / w_i``."""
    out = Fraction(1)
    for wi in _ws(w):
        out *= Fraction(N - wi, wi)
    return out


# ---------------------------------------------------------------------------
# Poincaré series and virtual Euler characteristics


@dataclass(frozen=True)
class PoincareSeries:
    w: WeightSystem
    N: int
    coeffs: Tuple[int, ...]

    def __getitem__(self, s):
        return self.coeffs[s]

    def __len__(self):
        return len(self.coeffs)

    def is_polynomial_below(self, s: int) -> bool:
        return not any(self.coeffs[s + 1:])


def poincare_coeffs(w, N: int, S: int) -> PoincareSeries:
    """Coefficients c_0..c_S of prod (1 - t^(N - w_i)) / (1 - t^(w_i))."""
    w = _ws(w)
    if S < 0:
        raise ValueError("truncation order must be non-negative")
    if any(N <= wi for wi in w):
        raise DegenerateWeights(f"degree {N} must exceed every weight in {w.weights}")
    c = [0] * (S + 1)
    c[0] = 1
    for wi in w:
        shift = N - wi
        for s in range(S, shift - 1, -1):
            c[s] -= c[s - shift]
        for s in range(wi, S + 1):
            c[s] += c[s - wi]
    return PoincareSeries(w, N, tuple(c))


def chi_virtual(w, N: int, m: int, series: PoincareSeries | None = None) -> int:
    """Virtual Euler characteristic of order ``m``: 1 + (-1)^n sum_{s=0}^{mN - |w|} c_s."""
    w = _ws(w)
    if m < 1:
        raise ValueError("order m must be at least 1")
    n = len(w) - 1
    top = m * N - w.total
    if top < 0:
        return 1
    if series is None or len(series) <= top:
        series = poincare_coeffs(w, N, top)
    return 1 + (-1) ** n * sum(series.coeffs[:top + 1])


# ---------------------------------------------------------------------------
# existence of isolated weighted homogeneous polynomials


def monomials_of_degree(w, N: int) -> List[Tuple[int, ...]]:
    w = _ws(w).weights
    out = []
    cur = [0] * len(w)

    def rec(i, remaining):
        if i == len(w) - 1:
            if remaining % w[i] == 0:
                cur[i] = remaining // w[i]
                out.append(tuple(cur))
            return
        for e in range(remaining // w[i] + 1):
            cur[i] = e
            rec(i + 1, remaining - e * w[i])
        cur[i] = 0

    if N >= 0:
        rec(0, N)
    return out


def support_admits_isolated(w, N: int, mons=None) -> bool:
    """Combinatorial test on the degree-N monomials for a general member to be isolated.

    For every nonempty variable set I, either some degree-N monomial uses
    only variables of I, or at least |I| distinct outside variables x_e
    appear in monomials x_I^M * x_e of degree N.
    """
    w = _ws(w)
    mons = monomials_of_degree(w, N) if mons is None else mons
    n = len(w)
    for size in range(1, n + 1):
        for I in itertools.combinations(range(n), size):
            inside = set(I)
            if any(all(i in inside for i, e in enumerate(m) if e) for m in mons):
                continue
            outside = set()
            for m in mons:
                extra = [i for i, e in enumerate(m) if e and i not in inside]
                if len(extra) == 1 and m[extra[0]] == 1:
                    outside.add(extra[0])
            if len(outside) < size:
                return False
    return True


@dataclass(frozen=True)
class IsoProbe:
    exists: bool
    witness: Optional[Polynomial] = None
    reason: str = ""

    @property
    def status(self) -> str:
        return "yes" if self.exists else "probably-no"


_probe_cache: Dict[tuple, IsoProbe] = {}


def is_isolated_weighted(h: Polynomial, w, budget: int | None = None) -> bool:
    grads = [g for g in h.gradient() if g]
    if not grads:
        return False
    sb = groebner_basis(grads, MonomialOrder.wdegrevlex(_ws(w).weights), budget=budget)
    return krull_dimension(sb) <= 0


def iso_poly_exists(w, N: int, trials: int = 20, seed: int = 0,
                    budget: int = 20000) -> IsoProbe:
    """Search for a weighted homogeneous polynomial of type (w; N) with an isolated singularity.

    Random combinations with small integer coefficients are drawn from a
    seeded generator; the first whose gradient ideal is zero-dimensional is
    returned as a witness.  Supports that fail :func:`support_admits_isolated`
    are rejected without sampling.  Large monomial sets are sampled sparsely
    (one monomial of the form x_i^a or x_i^a x_j per variable plus two extra),
    and each isolatedness check is bounded by ``budget`` reduction steps.
    """
    w = _ws(w)
    cache_key = (w.weights, N, trials, seed, budget)
    if cache_key in _probe_cache:
        return _probe_cache[cache_key]
    mons = monomials_of_degree(w, N)
    n = len(w)
    if not mons:
        result = IsoProbe(False, None, "no monomials of this degree")
    elif not support_admits_isolated(w, N, mons):
        result = IsoProbe(False, None, "support obstruction: no member can be isolated")
    else:
        rng = random.Random(seed)
        cover = {i: [m for m in mons if m[i] and sum(m) - m[i] <= 1] for i in range(n)}
        result = IsoProbe(False, None, f"no isolated member in {trials} trials")
        for _ in range(trials):
            if len(mons) <= 12:
                support = list(mons)
            else:
                chosen = {rng.choice(cover[i]) for i in range(n) if cover[i]}
                chosen.update(rng.sample(mons, min(2, len(mons))))
                support = sorted(chosen)
            coeffs = {m: rng.choice((-5, -4, -3, -2, -1, 1, 2, 3, 4, 5)) for m in support}
            h = Polynomial(coeffs, n)
            try:
                if is_isolated_weighted(h, w, budget):
                    result = IsoProbe(True, h, "verified witness")
                    break
            except BudgetExceeded:
                continue
    _probe_cache[cache_key] = result
    return result


def probe_with_witness(w, N: int, witness: Polynomial) -> IsoProbe | None:
    """Use a known polynomial as the witness when it checks out."""
    w = _ws(w)
    if witness.is_weighted_homogeneous(w) and witness.weighted_degree(w) == N \
            and is_isolated_weighted(witness, w):
        return IsoProbe(True, witness, "verified witness")
    return None


# ---------------------------------------------------------------------------
# Euler characteristics of the weighted homogeneous Milnor fibres


@dataclass(frozen=True)
class EigenBranch:
    """The data of one branch that the Euler characteristic formulas consume."""

    d: int
    dims: Tuple[int, ...]
    mu0: int
    tau0: Optional[int]

    @classmethod
    def of(cls, b: BranchData) -> "EigenBranch":
        return cls(b.isotropy_order, tuple(b.eigen_dims), b.mu0, b.tau0)

    def suspended(self, k: int) -> "EigenBranch":
        dims = suspended_dims(self.dims, self.d, k)
        mu = (k - 1) * self.mu0
        if self.tau0 is None:
            tau = None
        elif self.mu0 == self.tau0:
            tau = mu
        elif self.mu0 - self.tau0 == 1:
            tau = mu - k
        else:
            tau = None
        return EigenBranch(self.d, dims, mu, tau)

    @property
    def defect_at_most_one(self) -> bool:
        return self.tau0 is not None and self.mu0 - self.tau0 <= 1


def _window_sum(b: EigenBranch, start: int, N: int) -> int:
    # sum over s = 1..N of dims[start + s]
    d = b.d
    return sum(b.dims[(start + s) % d] for s in range(1, N + 1))


def chi_isolated(w, N: int) -> Fraction:
    """Euler characteristic of {f_N = 1} for an isolated top form."""
    w = _ws(w)
    n = len(w) - 1
    return 1 + (-1) ** n * weight_product(w, N)


def chi_homogenized_isolated(w, N: int) -> Fraction:
    """Euler characteristic of {f~ = 1} when f~ has an isolated singularity."""
    w = _ws(w)
    n = len(w) - 1
    return 1 + (-1) ** (n + 1) * (N - 1) * weight_product(w, N)


def chi_eigen(w, N: int, branches: Sequence[EigenBranch]) -> Fraction:
    """Euler characteristic from eigenspace dimensions (needs an isolated member of type (w; N))."""
    w = _ws(w)
    n = len(w) - 1
    total = sum(_window_sum(b, -N - w.total, N) for b in branches)
    return 1 + (-1) ** n * weight_product(w, N) + (-1) ** (n + 1) * total


def chi_virtual_eigen(w, N: int, branches: Sequence[EigenBranch], m: int,
                      series: PoincareSeries | None = None) -> int:
    """Euler characteristic from the order-m virtual characteristic plus eigenspace terms."""
    w = _ws(w)
    n = len(w) - 1
    total = sum(_window_sum(b, (m - 1) * N - w.total, N) for b in branches)
    return chi_virtual(w, N, m, series) + (-1) ** (n + 1) * total


def _period(branches: Sequence[EigenBranch], N: int) -> int:
    L = 1
    for b in branches:
        L = _lcm(L, b.d // gcd(N, b.d))
    return L


def stabilize(value: Callable[[int], object], m0: int, L: int, cap: int = 10):
    """First m >= m0 where ``value`` is constant on m..m+L; returns ``(value, m)``."""
    cache = {}

    def v(m):
        if m not in cache:
            cache[m] = value(m)
        return cache[m]

    for m in range(m0, m0 + cap * L + 1):
        if all(v(m + j) == v(m) for j in range(1, L + 1)):
            return v(m), m
    raise ArithmeticError(
        f"formula did not stabilize for m in [{m0}, {m0 + cap * L}] with period {L}")


def chi_virtual_stable(w, N: int, branches: Sequence[EigenBranch]):
    w = _ws(w)
    n = len(w) - 1
    L = _period(branches, N)
    m0 = n + 1
    series = poincare_coeffs(w, N, (m0 + 12 * L + 1) * N)
    return stabilize(lambda m: chi_virtual_eigen(w, N, branches, m, series), m0, L)


@dataclass(frozen=True)
class Chi:
    value: Fraction
    method: str
    conjectural: bool = False
    m: Optional[int] = None


def chi_fiber(w, N: int, branches: Sequence, iso: IsoProbe | None = None) -> Chi:
    """Euler characteristic of {f_N = 1} choosing the strongest applicable formula."""
    w = _ws(w)
    data = [b if isinstance(b, EigenBranch) else EigenBranch.of(b) for b in branches]
    if not data:
        return Chi(chi_isolated(w, N), "isolated")
    if iso is None:
        iso = iso_poly_exists(w, N)
    if iso.exists:
        return Chi(chi_eigen(w, N, data), "eigen")
    value, m = chi_virtual_stable(w, N, data)
    conj = not all(b.defect_at_most_one for b in data)
    return Chi(Fraction(value), "virtual", conj, m)


def chi_tilde(w, N: int, k: int, branches: Sequence, iso: IsoProbe | None = None,
              iso_ext: IsoProbe | None = None) -> Chi:
    """Euler characteristic of {f~ = 1} for the homogenization with gap ``k``."""
    w = _ws(w)
    data = [b if isinstance(b, EigenBranch) else EigenBranch.of(b) for b in branches]
    if k == 1 or not data:
        return Chi(chi_homogenized_isolated(w, N), "isolated")
    ext = w.extended()
    susp = [b.suspended(k) for b in data]
    if iso_ext is None and iso is not None and iso.exists:
        iso_ext = IsoProbe(True, _extend_witness(iso.witness, N), "extended witness")
    if iso_ext is not None and iso_ext.exists:
        return Chi(chi_eigen(ext, N, susp), "eigen")
    value, m = chi_virtual_stable(ext, N, susp)
    conj = not all(b.defect_at_most_one for b in susp)
    return Chi(Fraction(value), "virtual", conj, m)


def _extend_witness(h: Polynomial | None, N: int) -> Polynomial | None:
    if h is None:
        return None
    n = h.nvars + 1
    return h.embed(n, range(1, n)) + Polynomial.monomial((N,) + (0,) * h.nvars)


# ---------------------------------------------------------------------------
# total Milnor number


def _mu_from_chis(n: int, N: int, chi_t, chi_n) -> Fraction:
    return Fraction((-1) ** (n + 1)) * (Fraction(chi_t) - Fraction(chi_n)) / N


def mu_direct(w, N: int, k: int, branches: Sequence) -> Fraction:
    """Total Milnor number from the product term minus the triple eigenspace sum (t = 0..k-1)."""
    w = _ws(w)
    data = [b if isinstance(b, EigenBranch) else EigenBranch.of(b) for b in branches]
    total = 0
    for b in data:
        for s in range(1, N + 1):
            for t in range(k):
                total += b.dims[(-N - w.total + s - t) % b.d]
    return weight_product(w, N) - Fraction(total, N)


def mu_virtual(w, N: int, k: int, branches: Sequence):
    """Total Milnor number from virtual Euler characteristics, stabilized in m."""
    w = _ws(w)
    n = len(w) - 1
    ext = w.extended()
    data = [b if isinstance(b, EigenBranch) else EigenBranch.of(b) for b in branches]
    L = _period(data, N)
    m0 = n + 1
    top = (m0 + 12 * L + 1) * N
    series = poincare_coeffs(w, N, top)
    series_ext = poincare_coeffs(ext, N, top)

    def value(m):
        total = 0
        for b in data:
            for s in range(1, N + 1):
                for t in range(k):
                    total += b.dims[((m - 1) * N - w.total + s - t) % b.d]
        diff = chi_virtual(ext, N, m, series_ext) - chi_virtual(w, N, m, series)
        return Fraction((-1) ** (n + 1) * diff, N) - Fraction(total, N)

    return stabilize(value, m0, L)


@dataclass
class MilnorReport:
    w: WeightSystem
    N: int
    k: int
    nvars: int
    mu: object  # int, INFINITE, or None when suppressed
    formula_path: str
    chi_FN: Optional[Fraction]
    chi_tilde: Optional[Fraction]
    hypotheses: List[Tuple[str, str]] = field(default_factory=list)
    branches: List[BranchData] = field(default_factory=list)
    wly: Optional[WlyAnalysis] = None
    conjectural: bool = False
    cross_checks: List[Tuple[str, Fraction]] = field(default_factory=list)
    chi_tilde_affine: Optional[Tuple[Fraction, Fraction, int]] = None
    mu_affine: Optional[Tuple[Fraction, Fraction, int]] = None
    top: Optional[Polynomial] = None
    abstract: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.nvars - 1

    @property
    def is_finite(self) -> bool:
        return isinstance(self.mu, int)


@dataclass(frozen=True)
class Settings:
    eigen_sign: int = 1
    allow_conjectural: bool = False
    seed: int = 0
    trials: int = 20
    hints: Tuple[Tuple[Fraction, ...], ...] = ()


def _as_int(x: Fraction, what: str) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ArithmeticError(
            f"{what} = {x} is not an integer; the eigenspace sign convention or the branch "
            f"data is inconsistent")
    return int(x)


def _assemble(w: WeightSystem, N: int, k: int, top: Polynomial, sing_dim: int,
              branches: List[BranchData], settings: Settings) -> MilnorReport:
    n = len(w) - 1
    report = MilnorReport(w, N, k, len(w), None, "", None, None, top=top, branches=branches)
    hyp = report.hypotheses

    if sing_dim <= 0:
        report.formula_path = ISOLATED
        report.chi_FN = chi_isolated(w, N)
        report.chi_tilde = chi_homogenized_isolated(w, N)
        mu = weight_product(w, N)
        report.cross_checks.append((K1, _mu_from_chis(n, N, report.chi_tilde, report.chi_FN)))
        report.mu = _as_int(mu, "mu")
        hyp.append(("top form isolated", "yes"))
        report.chi_tilde_affine = (report.chi_tilde, Fraction(0), 1)
        _finish(report)
        return report

    data = [EigenBranch.of(b) for b in branches]
    iso = iso_poly_exists(w, N, settings.trials, settings.seed)
    hyp.append(("isolated member of type (w;N)", iso.status))
    all_equal = all(b.tau0 == b.mu0 for b in data)
    all_defect1 = all(b.defect_at_most_one for b in data)
    hyp.append(("mu0 = tau0 on every branch", "yes" if all_equal else "no"))
    hyp.append(("mu0 - tau0 <= 1 on every branch", "yes" if all_defect1 else "no"))

    def chi_t_at(kk, route):
        if kk == 1:
            return chi_homogenized_isolated(w, N)
        susp = [b.suspended(kk) for b in data]
        if route == "eigen":
            return chi_eigen(w.extended(), N, susp)
        return Fraction(chi_virtual_stable(w.extended(), N, susp)[0])

    if k == 1:
        report.formula_path = K1
        chi_n = chi_fiber(w, N, data, iso)
        report.chi_FN = chi_n.value
        report.chi_tilde = chi_homogenized_isolated(w, N)
        report.conjectural = chi_n.conjectural
        t_route = "eigen" if iso.exists else "virtual"
    elif iso.exists:
        report.formula_path = DIRECT
        mu = mu_direct(w, N, k, data)
        report.chi_FN = chi_eigen(w, N, data)
        report.chi_tilde = chi_t_at(k, "eigen")
        report.cross_checks.append((DIRECT, mu))
        if all_equal:
            report.cross_checks.append((VIRTUAL, mu_virtual(w, N, k, data)[0]))
        t_route = "eigen"
    elif all_equal:
        report.formula_path = VIRTUAL
        mu, m = mu_virtual(w, N, k, data)
        report.chi_FN = Fraction(chi_virtual_stable(w, N, data)[0])
        report.chi_tilde = chi_t_at(k, "virtual")
        report.cross_checks.append((VIRTUAL, mu))
        t_route = "virtual"
    else:
        iso_ext = iso_poly_exists(w.extended(), N, settings.trials, settings.seed)
        hyp.append(("isolated member of type ((1,w);N)", iso_ext.status))
        report.chi_FN = Fraction(chi_virtual_stable(w, N, data)[0])
        if iso_ext.exists:
            report.formula_path = MIXED
            report.chi_tilde = chi_t_at(k, "eigen")
            report.conjectural = not all_defect1
            t_route = "eigen"
        else:
            report.formula_path = CONJECTURAL
            mu, m = mu_virtual(w, N, k, data)
            report.chi_tilde = chi_t_at(k, "virtual")
            report.cross_checks.append((CONJECTURAL, mu))
            report.conjectural = True
            t_route = "virtual"

    mu = _mu_from_chis(n, N, report.chi_tilde, report.chi_FN)
    for name, other in report.cross_checks:
        if other != mu:
            raise ArithmeticError(
                f"formula routes disagree: cyclic cover gives {mu}, {name} gives {other}")
    report.mu = _as_int(mu, "mu")
    if report.mu < 0:
        raise ArithmeticError(f"negative Milnor number {report.mu}")

    # the Euler characteristic of the homogenized fibre is affine in k on residue classes
    L = 1
    for b in data:
        L = _lcm(L, b.d)
    c0, c1 = chi_t_at(k, t_route), chi_t_at(k + L, t_route)
    slope = (c1 - c0) / L
    report.chi_tilde_affine = (c0 - slope * k, slope, L)
    mslope = Fraction((-1) ** (n + 1)) * slope / N
    report.mu_affine = (Fraction(mu) - mslope * k, mslope, L)
    _finish(report)
    return report


def _finish(report: MilnorReport):
    if report.conjectural:
        report.hypotheses.append(("proven formula applies", "no (conjectural)"))
        report.notes.append("result relies on a conjectural Euler characteristic formula")
    else:
        report.hypotheses.append(("proven formula applies", "yes"))


def total_milnor(analysis: WlyAnalysis, branches: Sequence[BranchData] | None = None,
                 settings: Settings = Settings()) -> MilnorReport:
    """Total Milnor number of a WLY-at-infinity polynomial from its top form and gap."""
    dec = analysis.dec
    if not analysis.is_wly:
        raise ValueError("the polynomial is not WLY at infinity for these weights")
    w, N, k = dec.w, dec.N, dec.k
    if branches is None:
        branches = (find_branches(dec.top, w, settings.hints, settings.eigen_sign)
                    if analysis.sing_dim == 1 else [])
    gap = dec.gap_part
    for b in branches:
        if gap.evaluate(b.representative) == 0:
            raise ArithmeticError(f"gap part vanishes at branch point {b.representative}")
    report = _assemble(w, N, k, dec.top, analysis.sing_dim, list(branches), settings)
    report.wly = analysis
    report.hypotheses.insert(0, ("WLY at infinity", "yes"))
    _gate(report, settings)
    return report


def total_milnor_abstract(w, N: int, k: int, top: Polynomial,
                          settings: Settings = Settings(),
                          branches: Sequence[BranchData] | None = None) -> MilnorReport:
    """Same as :func:`total_milnor` from ``(w, N, k, f_N)`` alone, assuming WLY at infinity."""
    w = _ws(w)
    if len(w) != top.nvars:
        raise StructuralError("weights do not match the number of variables")
    if not top or not top.is_weighted_homogeneous(w) or top.weighted_degree(w) != N:
        raise ValueError(f"top form must be weighted homogeneous of degree {N}")
    if not 0 < k < N:
        raise ValueError(f"gap k must satisfy 0 < k < N, got k = {k}")
    sing_dim = singular_dimension(top, w)
    if sing_dim >= 2:
        raise ValueError("top forms with singular locus of dimension >= 2 are never WLY")
    if branches is None:
        branches = (find_branches(top, w, settings.hints, settings.eigen_sign)
                    if sing_dim == 1 else [])
    report = _assemble(w, N, k, top, sing_dim, list(branches), settings)
    report.abstract = True
    report.hypotheses.insert(0, ("WLY at infinity", "assumed"))
    _gate(report, settings)
    return report


def _gate(report: MilnorReport, settings: Settings):
    if report.conjectural and not settings.allow_conjectural:
        raise HypothesisFailure(
            f"only a conjectural formula applies (path {report.formula_path}); "
            f"rerun with --allow-conjectural to see the value")


# ---------------------------------------------------------------------------
# brute-force oracle


def oracle_total_milnor(f: Polynomial):
    """Dimension of Q[x]/(grad f); ``INFINITE`` when the critical locus is not finite."""
    grads = [g for g in f.gradient() if g]
    if not grads:
        return INFINITE if f.nvars else 0
    sb = groebner_basis(grads)
    st = quotient_staircase(sb)
    if not st.is_finite:
        return INFINITE
    return len(st)
