"""Command line interface: ``wlyinf <verb> ...``.

Exit codes: 0 success, 1 other error, 2 parse error, 3 not WLY at infinity,
4 a branch hint is needed, 5 only a conjectural formula applies.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import apps, euler
from .branches import parse_point
from .errors import HypothesisFailure, NonRationalBranch, ParseError, WlyError
from .euler import INFINITE, MilnorReport, Settings
from .parsing import names_in, parse_expression, parse_names, parse_polynomial, parse_sequence
from .poly import WeightSystem, direct_sum
from .wly import analyze

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_NOT_WLY = 3
EXIT_NEED_HINT = 4
EXIT_HYPOTHESIS = 5


class NotWly(WlyError):
    pass


# ---------------------------------------------------------------------------
# serialization


def num(x) -> str:
    if x is None:
        return None
    if x == INFINITE:
        return "infinite"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def report_to_dict(report: MilnorReport, verdict: apps.TamenessVerdict | None = None) -> dict:
    if report.abstract:
        wly = "assumed"
    else:
        wly = report.wly.is_wly if report.wly is not None else None
    out = {
        "weights": [str(x) for x in report.w.weights],
        "N": str(report.N),
        "k": str(report.k),
        "wly": wly,
        "branches": [
            {
                "point": [num(c) for c in b.representative],
                "d": str(b.d),
                "mu0": str(b.mu0),
                "tau0": str(b.tau0),
                "eigen_dims": [str(x) for x in b.eigen_dims],
            }
            for b in report.branches
        ],
        "chi_FN": num(report.chi_FN),
        "chi_tilde": num(report.chi_tilde),
        "formula_path": report.formula_path,
        "mu": num(report.mu),
        "hypotheses": [{"name": name, "status": status} for name, status in report.hypotheses],
        "tame": verdict.status if verdict is not None else None,
        "notes": list(report.notes),
    }
    if report.chi_tilde_affine is not None and report.branches:
        c0, c1, L = report.chi_tilde_affine
        m0, m1, _ = report.mu_affine
        out["chi_tilde_in_k"] = {"constant": num(c0), "k_coefficient": num(c1),
                                 "valid_for_k_mod": str(L), "residue": str(report.k % L)}
        out["mu_in_k"] = {"constant": num(m0), "k_coefficient": num(m1),
                          "valid_for_k_mod": str(L), "residue": str(report.k % L)}
    if report.conjectural:
        out["conjectural"] = True
    if verdict is not None:
        out["notes"].append(f"tameness: {verdict.reason}")
    return out


def _affine_str(const, coef) -> str:
    const, coef = Fraction(const), Fraction(coef)
    if coef == 0:
        return num(const)
    sign = "-" if coef < 0 else "+"
    mag = abs(coef)
    term = "k" if mag == 1 else f"{num(mag)}*k"
    return f"{num(const)} {sign} {term}"


def report_to_text(d: dict) -> str:
    lines = [
        f"weights: {','.join(d['weights'])}",
        f"N: {d['N']}",
        f"k: {d['k']}",
        f"wly: {d['wly']}",
    ]
    for b in d["branches"]:
        lines.append(f"branch: point=({','.join(b['point'])}) d={b['d']} mu0={b['mu0']} "
                     f"tau0={b['tau0']} eigen_dims=({','.join(b['eigen_dims'])})")
    lines += [
        f"chi_FN: {d['chi_FN']}",
        f"chi_tilde: {d['chi_tilde']}",
    ]
    if "chi_tilde_in_k" in d:
        c = d["chi_tilde_in_k"]
        m = d["mu_in_k"]
        cond = "" if c["valid_for_k_mod"] == "1" else \
            f"  (k = {c['residue']} mod {c['valid_for_k_mod']})"
        lines.append(f"chi_tilde(k): {_affine_str(Fraction(c['constant']), Fraction(c['k_coefficient']))}{cond}")
        lines.append(f"mu(k): {_affine_str(Fraction(m['constant']), Fraction(m['k_coefficient']))}{cond}")
    lines.append(f"formula_path: {d['formula_path']}")
    lines.append(f"mu: {d['mu']}" + (" (conjectural)" if d.get("conjectural") else ""))
    for h in d["hypotheses"]:
        lines.append(f"hypothesis: {h['name']}: {h['status']}")
    if d.get("tame") is not None:
        lines.append(f"tame: {d['tame']}")
    for note in d["notes"]:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def emit(obj: dict, fmt: str, text: str | None = None):
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        print(text if text is not None else "\n".join(f"{k}: {v}" for k, v in obj.items()))


# ---------------------------------------------------------------------------
# argument handling


def _weights(text: str | None, nvars: int) -> WeightSystem:
    if text is None:
        return WeightSystem.usual(nvars)
    try:
        ws = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"bad weight list {text!r}", 1, 1, text) from None
    if len(ws) != nvars:
        raise ValueError(f"{len(ws)} weights given for {nvars} variables")
    return WeightSystem(ws)


def _read_polys(args, count: int) -> List[str]:
    texts = args.poly or []
    texts = [texts] if isinstance(texts, str) else list(texts)
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            chunks = [c for c in fh.read().split(";") if c.strip()]
        texts = chunks + texts
    if len(texts) != count:
        raise ValueError(f"expected {count} polynomial(s), got {len(texts)}")
    return texts


def _parse(text: str, args) -> tuple:
    names = parse_names(args.vars) if args.vars else None
    return parse_polynomial(text, names)


def _settings(args) -> Settings:
    hints = tuple(parse_point(p) for p in (args.branch_point or ()))
    return Settings(eigen_sign=1 if args.eigen_sign == "plus" else -1,
                    allow_conjectural=args.allow_conjectural, seed=args.seed,
                    trials=args.trials, hints=hints)


def _analysis(args, text: str):
    f, names = _parse(text, args)
    w = _weights(args.weights, f.nvars)
    return f, names, w, analyze(f, w)


def _milnor(args, text: str | None):
    """Milnor report from a polynomial or, in abstract mode, from --top and --k."""
    settings = _settings(args)
    if getattr(args, "abstract", False):
        if args.top is None or args.k is None:
            raise ValueError("abstract mode needs --top and --k")
        top, names = _parse(args.top, args)
        w = _weights(args.weights, top.nvars)
        N = top.weighted_degree(w)
        return None, euler.total_milnor_abstract(w, N, args.k, top, settings)
    f, names, w, an = _analysis(args, text)
    if not an.is_wly:
        raise NotWly(f"{f.to_str(names)} is not WLY at infinity for weights {w.weights}")
    return f, euler.total_milnor(an, settings=settings)


def cmd_check_wly(args) -> int:
    (text,) = _read_polys(args, 1)
    f, names, w, an = _analysis(args, text)
    dec = an.dec
    out = {
        "weights": [str(x) for x in w.weights],
        "N": str(dec.N),
        "k": str(dec.k),
        "top": dec.top.to_str(names),
        "gap_part": dec.gap_part.to_str(names),
        "sing_dim": str(an.sing_dim),
        "wly": an.is_wly,
    }
    text_out = "\n".join(f"{k}: {','.join(v) if isinstance(v, list) else v}" for k, v in out.items())
    emit(out, args.format, text_out)
    return EXIT_OK if an.is_wly else EXIT_NOT_WLY


def cmd_milnor(args) -> int:
    texts = [] if args.abstract else _read_polys(args, 1)
    _, report = _milnor(args, texts[0] if texts else None)
    d = report_to_dict(report)
    emit(d, args.format, report_to_text(d))
    return EXIT_OK


def cmd_analyze(args) -> int:
    texts = [] if args.abstract else _read_polys(args, 1)
    f, report = _milnor(args, texts[0] if texts else None)
    verdict = apps.tameness(report)
    d = report_to_dict(report, verdict)
    if f is not None and report.is_finite:
        d["notes"].append(f"brute-force Jacobian quotient dimension: {num(euler.oracle_total_milnor(f))}")
    emit(d, args.format, report_to_text(d))
    return EXIT_OK


def cmd_tame(args) -> int:
    (text,) = _read_polys(args, 1)
    f, report = _milnor(args, text)
    witness = parse_sequence(args.witness) if args.witness else None
    verdict = apps.tameness(report, f, witness)
    out = {"tame": verdict.status, "reason": verdict.reason}
    if verdict.witness_rows:
        out["witness"] = [{"n": str(n), "norm_sq": num(a), "grad_norm_sq": num(g)}
                          for n, a, g in verdict.witness_rows]
    if args.broughton:
        ev = apps.broughton_diagnostic(f)
        out["broughton"] = {
            "mu": num(ev.mu),
            "samples": [{"v": [num(c) for c in v], "mu": num(m)} for v, m in ev.samples],
            "consistent": ev.consistent,
            "note": ev.note,
        }
    if args.format == "json":
        emit(out, "json")
    else:
        lines = [f"tame: {verdict.status}", f"reason: {verdict.reason}"]
        for row in out.get("witness", []):
            lines.append(f"witness n={row['n']}: |x|^2={row['norm_sq']} |grad|^2={row['grad_norm_sq']}")
        if "broughton" in out:
            b = out["broughton"]
            lines.append(f"broughton: mu={b['mu']} samples={[s['mu'] for s in b['samples']]} "
                         f"consistent={b['consistent']} ({b['note']})")
        print("\n".join(lines))
    return EXIT_OK


def cmd_compare(args) -> int:
    t1, t2 = _read_polys(args, 2)
    names = parse_names(args.vars) if args.vars else None
    if names is None:
        # one shared variable order for both inputs
        names = names_in(parse_expression(t1))
        for extra in names_in(parse_expression(t2)):
            if extra not in names:
                names.append(extra)
    f, _ = parse_polynomial(t1, names)
    h, _ = parse_polynomial(t2, names)
    w = _weights(args.weights, f.nvars)
    cert = apps.monodromy_equivalence(f, h, w, _settings(args))
    out = {
        "equivalent": cert.equivalent,
        "strength": cert.strength,
        "checks": [{"check": name, "ok": ok} for name, ok in cert.checks],
    }
    if args.format == "json":
        emit(out, "json")
    else:
        lines = [f"equivalent: {'yes' if cert.equivalent else 'no'}"]
        if cert.strength:
            lines.append(f"strength: {cert.strength}")
        lines += [f"check: {name}: {'ok' if ok else 'FAILED'}" for name, ok in cert.checks]
        print("\n".join(lines))
    return EXIT_OK


def cmd_ts(args) -> int:
    t1, t2 = _read_polys(args, 2)
    settings = _settings(args)
    reports, polys = [], []
    for text, wtext in ((t1, args.weights), (t2, args.weights_h or args.weights)):
        f, names = parse_polynomial(text)
        w = _weights(wtext, f.nvars)
        an = analyze(f, w)
        if not an.is_wly:
            raise NotWly(f"{f.to_str(names)} is not WLY at infinity for weights {w.weights}")
        reports.append(euler.total_milnor(an, settings=settings))
        polys.append(f)
    ts = apps.thom_sebastiani(*reports)
    out = {
        "mu": num(ts.mu),
        "sphere_dimension": str(ts.sphere_dimension),
        "tame": ts.tame,
        "certificate": list(ts.certificate),
        "notes": list(ts.notes),
    }
    if args.check_oracle:
        out["oracle_mu"] = num(euler.oracle_total_milnor(direct_sum(*polys)))
    if args.format == "json":
        emit(out, "json")
    else:
        lines = [f"mu: {out['mu']}", f"sphere_dimension: {out['sphere_dimension']}",
                 f"tame: {out['tame'] if out['tame'] else 'not established'}"]
        lines += [f"certificate: {c}" for c in out["certificate"]]
        lines += [f"note: {c}" for c in out["notes"]]
        if "oracle_mu" in out:
            lines.append(f"oracle_mu: {out['oracle_mu']}")
        print("\n".join(lines))
    return EXIT_OK


def cmd_oracle(args) -> int:
    (text,) = _read_polys(args, 1)
    f, _ = _parse(text, args)
    mu = euler.oracle_total_milnor(f)
    if args.format == "json":
        emit({"mu": num(mu)}, "json")
    else:
        print(f"mu: {num(mu)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--weights", help="comma-separated positive weights (default: all 1)")
    common.add_argument("--vars", help="comma-separated variable order (default: first appearance)")
    common.add_argument("--branch-point", action="append", metavar="POINT",
                        help="rational point on a branch, e.g. 0,-1,1/2,0 (repeatable)")
    common.add_argument("--eigen-sign", choices=("plus", "minus"), default="plus",
                        help="eigenspace index convention (default: plus)")
    common.add_argument("--allow-conjectural", action="store_true",
                        help="report values that rest on a conjectural formula")
    common.add_argument("--seed", type=int, default=0, help="seed for the random probes")
    common.add_argument("--trials", type=int, default=20,
                        help="random trials when probing for isolated polynomials")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--input", help="read polynomial(s) from a file, separated by ';'")
    common.add_argument("-v", "--verbose", action="store_true")

    abstract = argparse.ArgumentParser(add_help=False)
    abstract.add_argument("--abstract", action="store_true",
                          help="work from --top and --k only, assuming WLY at infinity")
    abstract.add_argument("--top", help="top weighted homogeneous part (abstract mode)")
    abstract.add_argument("--k", type=int, help="gap between N and the next nonzero degree")

    p = argparse.ArgumentParser(prog="wlyinf",
                                description="Total Milnor numbers of WLY-at-infinity polynomials.")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, func, nargs, help_, parents=(common,)):
        sp = sub.add_parser(name, parents=list(parents), help=help_)
        sp.add_argument("poly", nargs=nargs, help="polynomial, e.g. 'x1^7*x2 + x3^3 + x2'")
        sp.set_defaults(func=func)
        return sp

    add("analyze", cmd_analyze, "?", "full report with tameness", (common, abstract))
    add("milnor", cmd_milnor, "?", "total Milnor number", (common, abstract))
    add("check-wly", cmd_check_wly, "?", "WLY-at-infinity test")
    sp = add("tame", cmd_tame, "?", "tameness verdict")
    sp.add_argument("--witness", help="sequence in n, e.g. '1/n^2, -n^4/4, -n^2/2, 0'")
    sp.add_argument("--broughton", action="store_true",
                    help="also compare oracle values under small linear perturbations")
    add("compare", cmd_compare, "*", "monodromy-at-infinity equivalence of two polynomials")
    sp = add("ts", cmd_ts, "*", "Thom-Sebastiani sum of two polynomials")
    sp.add_argument("--weights-h", help="weights of the second polynomial (default: --weights)")
    sp.add_argument("--check-oracle", action="store_true",
                    help="also compute the brute-force value for the sum")
    add("oracle", cmd_oracle, "?", "brute-force Jacobian quotient dimension")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotWly as exc:
        print(f"not WLY: {exc}", file=sys.stderr)
        return EXIT_NOT_WLY
    except NonRationalBranch as exc:
        print(f"branch hint needed: {exc}", file=sys.stderr)
        return EXIT_NEED_HINT
    except HypothesisFailure as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (WlyError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
