"""Tameness verdicts, monodromy-at-infinity equivalence and Thom-Sebastiani sums."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import WlyError
from .euler import (DIRECT, INFINITE, ISOLATED, K1, VIRTUAL, MilnorReport, Settings,
                    oracle_total_milnor, total_milnor)
from .poly import Polynomial, decompose
from .wly import analyze, check_vanishing_gradient_sequence

# paths on which the Milnor number is known to depend only on the top form and k
PROVEN_PATHS = (ISOLATED, K1, DIRECT, VIRTUAL)

TAME = "Tame"
CRITERION_NOT_MET = "CriterionNotMet"
NOT_TAME = "NotTame"

DIFFEOMORPHIC = "Diffeomorphic"
FIBER_HOMOTOPY = "FiberHomotopy"


def formula_applies(report: MilnorReport) -> bool:
    return report.formula_path in PROVEN_PATHS and not report.conjectural


@dataclass(frozen=True)
class TamenessVerdict:
    status: str
    reason: str
    witness_rows: Tuple = ()

    @property
    def is_tame(self) -> bool:
        return self.status == TAME


def tameness(report: MilnorReport, f: Polynomial | None = None,
             witness: Callable[[int], Sequence] | None = None,
             samples=(10, 100, 1000)) -> TamenessVerdict:
    """Tame when the Milnor number formula is proven here and N - k >= max weight.

    Failing the bound never implies non-tameness by itself.  ``NotTame`` is
    returned only for an explicit ``witness`` sequence along which the
    gradient of ``f`` is checked exactly to tend to zero.
    """
    bound = report.N - report.k
    wmax = max(report.w.weights)
    if formula_applies(report) and bound >= wmax:
        reason = f"formula applies ({report.formula_path}) and N - k = {bound} >= max weight {wmax}"
        if report.abstract:
            reason += "; WLY at infinity assumed"
        return TamenessVerdict(TAME, reason)
    if not formula_applies(report):
        reason = f"no proven formula applies (path {report.formula_path})"
    else:
        reason = f"N - k = {bound} < max weight {wmax}"
    if witness is not None:
        if f is None:
            raise ValueError("a witness sequence needs the polynomial itself")
        ok, rows = check_vanishing_gradient_sequence(f, witness, samples)
        if ok:
            return TamenessVerdict(
                NOT_TAME, reason + "; witness sequence escapes with gradient tending to 0",
                tuple(rows))
        return TamenessVerdict(CRITERION_NOT_MET, reason + "; witness sequence not confirmed",
                               tuple(rows))
    return TamenessVerdict(CRITERION_NOT_MET, reason)


@dataclass(frozen=True)
class BroughtonEvidence:
    mu: object
    samples: Tuple[Tuple[Tuple[Fraction, ...], object], ...]
    consistent: bool
    note: str = "equal values at sampled perturbations are evidence of tameness, not a proof"


def broughton_diagnostic(f: Polynomial, perturbations: Sequence[Sequence] | None = None
                         ) -> BroughtonEvidence:
    """Compare the oracle Milnor number of ``f`` and of ``f + <v, x>`` for a few small ``v``."""
    n = f.nvars
    if perturbations is None:
        perturbations = [tuple(Fraction(1, 97 + 10 * i + j) for j in range(n)) for i in range(3)]
    mu = oracle_total_milnor(f)
    rows = []
    for v in perturbations:
        v = tuple(Fraction(c) for c in v)
        if len(v) != n:
            raise ValueError("perturbation length does not match variable count")
        lin = Polynomial({tuple(int(i == j) for j in range(n)): c for i, c in enumerate(v) if c}, n)
        rows.append((v, oracle_total_milnor(f + lin)))
    consistent = mu != INFINITE and all(m == mu for _, m in rows)
    return BroughtonEvidence(mu, tuple(rows), consistent)


@dataclass(frozen=True)
class EquivalenceCertificate:
    equivalent: bool
    strength: Optional[str]
    checks: Tuple[Tuple[str, bool], ...]

    @property
    def failed(self) -> Optional[str]:
        for name, ok in self.checks:
            if not ok:
                return name
        return None


def monodromy_equivalence(f: Polynomial, h: Polynomial, w,
                          settings: Settings = Settings()) -> EquivalenceCertificate:
    """Certify that f and h have equivalent monodromy fibrations at infinity.

    Needs the same weighted decomposition data (w, N, k), identical top
    forms, both WLY at infinity, and a proven Milnor number formula.
    """
    checks: List[Tuple[str, bool]] = []

    def done(ok: bool, strength=None):
        return EquivalenceCertificate(ok, strength, tuple(checks))

    try:
        df, dh = decompose(f, w), decompose(h, w)
    except (WlyError, ValueError) as exc:
        checks.append((f"weighted decomposition ({exc})", False))
        return done(False)
    checks.append(("same variable count", df.nvars == dh.nvars))
    checks.append(("same top degree N", df.N == dh.N))
    checks.append(("same gap k", df.k == dh.k))
    if not all(ok for _, ok in checks):
        return done(False)
    checks.append(("identical top forms", df.top == dh.top))
    if not checks[-1][1]:
        return done(False)
    af, ah = analyze(f, w), analyze(h, w)
    checks.append(("first polynomial WLY at infinity", af.is_wly))
    checks.append(("second polynomial WLY at infinity", ah.is_wly))
    if not (af.is_wly and ah.is_wly):
        return done(False)
    try:
        rf = total_milnor(af, settings=settings)
        rh = total_milnor(ah, settings=settings)
    except WlyError as exc:
        checks.append((f"Milnor number formula applies ({type(exc).__name__})", False))
        return done(False)
    checks.append((f"Milnor number formula applies ({rf.formula_path})", formula_applies(rf)))
    if not checks[-1][1]:
        return done(False)
    checks.append((f"equal Milnor numbers ({rf.mu})", rf.mu == rh.mu))
    if not checks[-1][1]:
        return done(False)
    strength = DIFFEOMORPHIC if df.n != 2 else FIBER_HOMOTOPY
    return done(True, strength)


@dataclass(frozen=True)
class ThomSebastianiReport:
    mu: object
    sphere_dimension: int
    tame: Optional[bool]
    certificate: Tuple[str, ...]
    factors: Tuple[Tuple, ...]
    notes: Tuple[str, ...] = field(default=())


def _factor_key(r: MilnorReport) -> Tuple:
    return (r.w.weights, r.N, r.k, str(r.top), r.mu)


def thom_sebastiani(report_f: MilnorReport, report_h: MilnorReport,
                    tame_f: TamenessVerdict | None = None,
                    tame_h: TamenessVerdict | None = None) -> ThomSebastianiReport:
    """Invariants of f(x) + h(y) on disjoint variables from the reports of f and h."""
    if INFINITE in (report_f.mu, report_h.mu):
        mu = INFINITE
    elif report_f.mu is None or report_h.mu is None:
        raise ValueError("both reports need a Milnor number")
    else:
        mu = report_f.mu * report_h.mu
    tf = tame_f or tameness(report_f)
    th = tame_h or tameness(report_h)
    tame = True if tf.is_tame and th.is_tame else None
    dim = report_f.n + report_h.n + 1
    key_f, key_h = _factor_key(report_f), _factor_key(report_h)
    cert = (
        f"generic fibre of the sum ~ bouquet of {mu} spheres of dimension {dim}",
        "monodromy at infinity of the sum = tensor product of "
        f"[{_key_str(key_f)}] and [{_key_str(key_h)}]",
    )
    notes = ("the sum need not be WLY at infinity for any weight system",)
    if tame is None:
        notes += ("tameness of the sum not established",)
    return ThomSebastianiReport(mu, dim, tame, cert, (key_f, key_h), notes)


def _key_str(key) -> str:
    w, N, k, top, mu = key
    return f"w={','.join(map(str, w))} N={N} k={k} top={top} mu={mu}"
