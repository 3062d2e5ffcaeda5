"""Command-line front end.

Exit status: 0 when every hard check passes, 1 on any failed check, 2 when
the only problems are conjecture counterexamples, 64 on usage errors and 74
when the report cannot be written.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import concavity as cc
from . import identities as ids
from .family import ExponentRule, H_poly, IndexOutOfRange, RuleError, binomial, f_poly, parse_rule
from .polycore import DEFAULT_DEGREE_CAP, DegreeCapExceeded
from .reports import FORMATS, Check, GeneratedPoly, render_report, verdict_of, write_report
from .roots import (
    STURM_DEGREE_CAP,
    PrecisionExhausted,
    ScanRow,
    all_roots,
    conjecture45_46_scan,
    count_real_roots,
    exponent_growth_failures,
    heuristic_roots,
    random_family_reports,
)
from .roots.analysis import EVIDENCE, FAIL, PASS, REFUTED, SKIPPED

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_REFUTED = 2
EXIT_USAGE = 64
EXIT_IOERR = 74

HALVING_POINTS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> range:
    """``A..B`` (inclusive) or a single integer."""
    parts = text.split("..")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}; expected A..B") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return x


def _positive_int(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if x <= 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return x


@dataclass
class RunConfig:
    command: str
    m_range: range | None
    n_range: range | None
    k_range: range | None
    trunc: int
    tol: float | None
    degree_cap: int | None
    output_format: str
    output_path: str | None
    seed: int
    rules: list[ExponentRule]
    terms: int = 60
    families: int = 0
    heuristics: bool = False


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, help="single m (same as --m-range M..M)")
    common.add_argument("--n", type=int, help="single n (same as --n-range N..N)")
    common.add_argument("--m-range", type=parse_range, metavar="A..B")
    common.add_argument("--n-range", type=parse_range, metavar="A..B")
    common.add_argument("--k-range", type=parse_range, metavar="A..B")
    common.add_argument("--trunc", type=_positive_int, default=12, metavar="N",
                        help="truncation order for series checks (default 12)")
    common.add_argument("--tol", type=_positive_float, metavar="X",
                        help="tolerance: halving discrepancy for verify (1e-9), relative root radius for roots (1e-10)")
    common.add_argument("--degree-cap", type=_positive_int, metavar="D")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--rule", action="append", default=[], metavar="RULE",
                        help="exponent rule binom:M, geom or table:v0,v1,...; repeatable")

    parser = _Parser(prog="sparsebinom", description="Exact checks on sparse binomial-exponent polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("gen", parents=[common], help="print f_{m,n} or H_n for a rule")
    v = sub.add_parser("verify", parents=[common], help="run the identity suite")
    v.add_argument("--terms", type=_positive_int, default=60, help="terms in the halving sums (default 60)")
    sub.add_parser("concavity", parents=[common], help="log-concavity certificates")
    r = sub.add_parser("roots", parents=[common], help="certified zeros against annulus bounds")
    r.add_argument("--families", type=int, default=0, metavar="COUNT",
                   help="also solve COUNT pseudorandom members of each general family")
    r.add_argument("--heuristics", action="store_true", help="report predicted real-zero locations")
    sub.add_parser("conjectures", parents=[common], help="real-zero counts and parity tables")
    return parser


def _merge_single(single: int | None, rng: range | None, name: str) -> range | None:
    if single is not None and rng is not None:
        raise UsageError(f"give either --{name} or --{name}-range, not both")
    if single is not None:
        return range(single, single + 1)
    return rng


def config_from_args(args: argparse.Namespace) -> RunConfig:
    m_range = _merge_single(args.m, args.m_range, "m")
    n_range = _merge_single(args.n, args.n_range, "n")
    try:
        rules = [parse_rule(text) for text in args.rule]
    except RuleError as exc:
        raise UsageError(str(exc)) from None
    cfg = RunConfig(
        command=args.command,
        m_range=m_range,
        n_range=n_range,
        k_range=args.k_range,
        trunc=args.trunc,
        tol=args.tol,
        degree_cap=args.degree_cap,
        output_format=args.format,
        output_path=args.out,
        seed=args.seed,
        rules=rules,
        terms=getattr(args, "terms", 60),
        families=getattr(args, "families", 0),
        heuristics=getattr(args, "heuristics", False),
    )
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    cmd = cfg.command
    if cfg.n_range is None:
        raise UsageError(f"{cmd} needs --n or --n-range")
    if cfg.n_range.start < 0:
        raise UsageError("n must be >= 0")
    if cmd == "gen":
        if cfg.m_range is None and not cfg.rules:
            raise UsageError("gen needs --m/--m-range or --rule")
        return
    if cfg.m_range is None and not (cmd == "verify" and cfg.rules):
        raise UsageError(f"{cmd} needs --m or --m-range")
    low = {"verify": 1, "concavity": 2, "roots": 2, "conjectures": 1}[cmd]
    if cfg.m_range is not None and cfg.m_range.start < low:
        raise UsageError(f"{cmd} needs m >= {low}")
    if cmd == "concavity" and cfg.k_range is not None and cfg.k_range.start < 1:
        raise UsageError("k must be >= 1")
    if cmd == "roots" and cfg.families < 0:
        raise UsageError("--families must be >= 0")


# --- suites ------------------------------------------------------------------


def run_gen(cfg: RunConfig) -> list:
    out = []
    cap = cfg.degree_cap or DEFAULT_DEGREE_CAP
    for rule in cfg.rules:
        for n in cfg.n_range:
            out.append(GeneratedPoly(f"H[{rule},{n}]", {"rule": str(rule), "n": n}, H_poly(rule, n)))
    for m in cfg.m_range or ():
        for n in cfg.n_range:
            if binomial(n, m) > cap:
                out.append(Check("poly", f"f[{m},{n}]", {"m": m, "n": n}, SKIPPED, {"degree": binomial(n, m)}))
                continue
            out.append(GeneratedPoly(f"f[{m},{n}]", {"m": m, "n": n}, f_poly(m, n)))
    return out


def _guarded(identity_id: str, params: dict, fn, *args):
    """Run one check; an index outside a finite table rule becomes a not-applicable row."""
    try:
        return fn(*args)
    except IndexOutOfRange as exc:
        return ids.IdentityReport(identity_id, params, ids.NOT_APPLICABLE, detail={"reason": str(exc)})


def _rule_suite(rule: ExponentRule, cfg: RunConfig) -> list:
    r = str(rule)
    out = [_guarded("gen-function", {"rule": r, "N": cfg.trunc}, ids.check_gf, rule, cfg.trunc)]
    for n in cfg.n_range:
        p = {"rule": r, "n": n}
        out.append(_guarded("finite-transform", p, ids.check_finite_transform, rule, n))
        out.append(_guarded("parity-reflection", p, ids.check_parity_reflection, rule, n))
        out.extend(_guarded("inverse-transform", {**p, "nu": nu}, ids.check_inverse_transform, rule, n, nu)
                   for nu in (0, 1))
        out.append(_guarded("span", p, ids.check_span, rule, n))
        out.extend(_guarded("difference", {**p, "r": k}, ids.check_difference_identity, rule, n, k) for k in (1, 2))
        out.extend(_guarded("support-collapse", {**p, "nu": nu}, ids.check_support_collapse, rule, n, nu)
                   for nu in range(0, min(3, n) + 1))
    if rule.kind == "binomial" and cfg.terms >= rule.strictly_increasing_from():
        tol = cfg.tol if cfg.tol is not None else 1e-9
        out.extend(ids.check_halving(rule, z, cfg.terms, tol) for z in HALVING_POINTS)
    return out


def run_verify(cfg: RunConfig) -> list:
    out = []
    rules = [ExponentRule.binomial(m) for m in (cfg.m_range or ())] + cfg.rules
    for rule in rules:
        out.extend(_rule_suite(rule, cfg))
    for n in cfg.n_range:
        if n >= 1:
            out.extend(ids.check_moment_vanishing(n, nu) for nu in range(0, 5))
    for m in cfg.m_range or ():
        for n in cfg.n_range:
            if n >= m:
                out.append(ids.check_derivative_identity(m, n))
                out.append(ids.check_inverse_derivative(m, n))
        if cfg.trunc > m:
            out.append(ids.check_pde(m, cfg.trunc))
    return out


def _s_bound_check(m: int, n_range: range) -> Check:
    rep = cc.check_S_bound(m, n_range.stop - 1)
    witness = None if rep.ok else {"below_floor": rep.below_floor[:5], "equality_at": rep.equality_at[:5]}
    return Check("check", "constant-defect-bound", {"m": m, "n_range": list(rep.n_range)},
                 PASS if rep.ok else FAIL, witness)


def run_concavity(cfg: RunConfig) -> list:
    out: list = []
    k_range = cfg.k_range or range(1, 2)
    for m in cfg.m_range:
        for n in cfg.n_range:
            if n >= 1:
                out.append(cc.certify(f"F[{m},{n}]", cc.F_poly(m, n), {"m": m, "n": n}))
            if n >= max(m - 1, 1):
                bad = cc.sampled_log_concavity(m, n)
                out.append(Check("check", "log-concave-samples", {"m": m, "n": n}, FAIL if bad else PASS,
                                 [list(b) for b in bad] or None))
                if m % 2 == 0:
                    neg = cc.negative_axis_samples(m, n)
                    out.append(Check("check", "negative-axis-samples", {"m": m, "n": n},
                                     REFUTED if neg else EVIDENCE, [list(x) for x in neg] or None))
        for k in k_range:
            if k < 2:
                continue
            for n in cfg.n_range:
                if n >= k:
                    cert = cc.certify(f"Fk[{m},{n},{k}]", cc.F_k_poly(m, n, k), {"m": m, "n": n, "k": k})
                    # nonnegativity of the k-shifted defect is observed, not proved
                    cert.positive = cert.nonneg
                    out.append(cert)
        for k in k_range:
            for n in cfg.n_range:
                if n >= k and n >= 1:
                    out.append(cc.certify(f"G[{m},{n},{k}]", cc.G_poly(m, n, k), {"m": m, "n": n, "k": k}))
        edge = cc.F_poly(m, m - 1)
        out.append(Check("check", "edge-value", {"m": m}, PASS if edge == 2 ** (m - 2) else FAIL,
                         None if edge == 2 ** (m - 2) else edge))
        diag = cc.F_poly(m, m)
        ok = diag == cc.F_mm_display(m)
        out.append(Check("check", "diagonal-closed-form", {"m": m}, PASS if ok else FAIL, None if ok else diag))
        out.append(_s_bound_check(m, cfg.n_range))
        s_ok = cc.check_s_sequence(m)
        out.append(Check("check", "defect-recurrence", {"m": m}, PASS if s_ok else FAIL))
        g = cc.check_g_shifted(m)
        out.append(Check("check", "shifted-defect", {"m": m}, PASS if g.ok else FAIL,
                         None if g.ok else {k: v for k, v in vars(g).items() if isinstance(v, bool)}))
        for n in cfg.n_range:
            if n >= m:
                reports = [cc.g_nu_decomposition(m, n, nu) for nu in range(2 * n + 1)]
                bad = [r.nu for r in reports if not r.ok]
                out.append(Check("check", "square-decomposition", {"m": m, "n": n},
                                 FAIL if bad else PASS, {"nu": bad} if bad else None))
                re_ok = cc.check_g_reassembly(m, n)
                out.append(Check("check", "reassembly", {"m": m, "n": n}, PASS if re_ok else FAIL))
    if 2 in cfg.m_range:
        n_max = cfg.n_range.stop - 1
        k_max = k_range.stop - 1
        if n_max >= 1:
            out.extend(cc.conjecture39_scan(n_max, k_max, m=2))
    return out


def run_roots(cfg: RunConfig) -> list:
    out: list = []
    tol = cfg.tol if cfg.tol is not None else 1e-10
    cap = cfg.degree_cap or DEFAULT_DEGREE_CAP
    for m in cfg.m_range:
        for n in cfg.n_range:
            if n < m or n < 2:
                continue
            try:
                rep = all_roots(m, n, tol, cap, cfg.seed)
            except DegreeCapExceeded:
                out.append(ScanRow(m, n, None, None, None, None, None, None, SKIPPED))
                continue
            except PrecisionExhausted as exc:
                out.append(Check("roots", f"f[{m},{n}]", {"m": m, "n": n}, FAIL, {"error": str(exc)}))
                continue
            out.append(rep)
            if rep.degree <= STURM_DEGREE_CAP and not rep.clusters:
                exact = count_real_roots(m, n, isolate=False).count
                ok = exact == rep.real_count
                out.append(Check("check", "real-count-agreement", {"m": m, "n": n}, PASS if ok else FAIL,
                                 {"sturm": exact, "solver": rep.real_count}))
            if cfg.heuristics:
                out.extend(heuristic_roots(m, n, tol, cfg.seed))
    if cfg.families:
        out.extend(random_family_reports(cfg.families, cfg.seed, tol))
    return out


def run_conjectures(cfg: RunConfig) -> list:
    cap = cfg.degree_cap or STURM_DEGREE_CAP
    scan = conjecture45_46_scan(cfg.m_range, cfg.n_range, cap)
    out: list = list(scan.rows)
    out.extend(scan.parity)
    odd = [m for m in cfg.m_range if m % 2 == 1 and m >= 3]
    if odd:
        out.append(Check("check", "positive-at-minus-one", {"m": odd, "n_max": cfg.n_range.stop - 1},
                         FAIL if scan.sign_failures else PASS,
                         [list(x) for x in scan.sign_failures[:3]] or None))
        out.append(Check("check", "zero-left-of-minus-one", {"m": odd},
                         FAIL if scan.left_root_failures else PASS,
                         [list(x) for x in scan.left_root_failures[:3]] or None))
    bad = exponent_growth_failures()
    out.append(Check("check", "exponent-growth", {"m": [3, 8], "j": [2, 50]}, FAIL if bad else PASS, bad[:3] or None))
    return out


SUITES = {
    "gen": run_gen,
    "verify": run_verify,
    "concavity": run_concavity,
    "roots": run_roots,
    "conjectures": run_conjectures,
}


def exit_status(reports: list) -> int:
    verdicts = [verdict_of(r) for r in reports]
    if FAIL in verdicts:
        return EXIT_FAIL
    if REFUTED in verdicts:
        return EXIT_REFUTED
    return EXIT_OK


def run(cfg: RunConfig, stdout=None) -> int:
    reports = SUITES[cfg.command](cfg)
    data = render_report(reports, cfg.output_format)
    write_report(data, cfg.output_path, stdout if stdout is not None else sys.stdout.buffer)
    return exit_status(reports)


def main(argv: list[str] | None = None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return run(cfg, stdout)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"sparsebinom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RuleError, ids.InvalidDomain) as exc:
        print(f"sparsebinom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sparsebinom: {exc}", file=sys.stderr)
        return EXIT_IOERR


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
