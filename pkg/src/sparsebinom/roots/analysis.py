"""Root studies of f_{m,n}: annulus checks, real-root tables, parity, heuristics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..family import binomial, f_cached
from ..polycore import DEFAULT_DEGREE_CAP, DegreeCapExceeded, SparsePoly, eval_exact
from .bounds import (
    OutOfRegime,
    exponent_growth_ok,
    in_lower_regime,
    in_upper_regime,
    lower_bound,
    upper_bound,
    upper_regime_label,
)
from .solver import Solution, solve_sparse
from .sturm import STURM_DEGREE_CAP, count_real_roots, family_chain, refine_root, variations_at

PASS = "pass"
FAIL = "fail"
REFUTED = "CONJECTURE-REFUTED"
EVIDENCE = "evidence"
RECORDED = "recorded"
SKIPPED = "skipped"

U = 2.0**-53


@dataclass
class RootReport:
    """Certified zeros of one polynomial checked against an annulus."""

    m: int | None
    n: int | None
    roots: list[complex]
    radii: list[float]
    lower_bound: float | None
    upper_bound: float | None
    all_inside_annulus: bool
    precision_used: int
    degree: int
    real_count: int
    vieta_sum_ok: bool
    vieta_product_ok: bool
    regime: str = ""
    clusters: list[list[int]] = field(default_factory=list)
    label: str = ""
    real: list[bool] = field(default_factory=list)

    @property
    def max_modulus(self) -> float:
        return max(abs(z) for z in self.roots)

    @property
    def min_modulus(self) -> float:
        return min(abs(z) for z in self.roots)

    @property
    def max_relative_radius(self) -> float:
        return max((r / abs(z) if z else r) for z, r in zip(self.roots, self.radii))

    @property
    def count_ok(self) -> bool:
        return len(self.roots) == self.degree

    @property
    def ok(self) -> bool:
        return self.all_inside_annulus and self.count_ok and self.vieta_sum_ok and self.vieta_product_ok

    @property
    def verdict(self) -> str:
        return PASS if self.ok else FAIL

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "label": self.label,
            "degree": self.degree,
            "roots": [
                {"re": z.real, "im": z.imag, "radius": r} for z, r in zip(self.roots, self.radii)
            ],
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "all_inside_annulus": self.all_inside_annulus,
            "precision_used": self.precision_used,
            "real_count": self.real_count,
            "vieta_sum_ok": self.vieta_sum_ok,
            "vieta_product_ok": self.vieta_product_ok,
            "regime": self.regime,
            "clusters": self.clusters,
            "pass": self.ok,
        }

    def scan_row(self) -> ScanRow:
        return ScanRow(
            m=self.m,
            n=self.n,
            count=self.real_count,
            period_detected=None,
            bound_lower=self.lower_bound,
            bound_upper=self.upper_bound,
            max_modulus=self.max_modulus,
            min_modulus=self.min_modulus,
            verdict=self.verdict,
        )


@dataclass
class ScanRow:
    m: int | None
    n: int | None
    count: int | None
    period_detected: int | None
    bound_lower: float | None
    bound_upper: float | None
    max_modulus: float | None
    min_modulus: float | None
    verdict: str

    COLUMNS = ("m", "n", "count", "period_detected", "bound_lower", "bound_upper", "max_modulus", "min_modulus")

    def to_json(self) -> dict:
        d = {c: getattr(self, c) for c in self.COLUMNS}
        d["verdict"] = self.verdict
        return d


def _annulus_ok(sol: Solution, lower: float | None, upper: float | None) -> bool:
    for z, r in zip(sol.roots, sol.radii):
        mod = abs(z)
        # the margin to each bound must exceed the inclusion radius
        if upper is not None and not (mod + r < upper):
            return False
        if lower is not None and not (mod - r > lower):
            return False
    return True


def _vieta(p: SparsePoly, sol: Solution) -> tuple[bool, bool]:
    deg = p.degree
    lc = p.leading_coefficient
    zs = np.array(sol.roots, dtype=complex)
    rs = np.array(sol.radii, dtype=float)
    mods = np.abs(zs)
    slack = 4 * deg * U * float(mods.sum())
    expected_sum = -p.coeff(deg - 1) / lc
    sum_ok = abs(complex(zs.sum()) - expected_sum) <= float(rs.sum()) + slack + 1e-300
    c0 = p.coeff(0)
    if c0 == 0:
        product_ok = bool(np.any(mods == 0))
    else:
        if np.any(rs >= mods):
            return sum_ok, False
        log_prod = float(np.log(mods).sum())
        target = math.log(abs(c0)) - math.log(abs(lc))
        tol = float((rs / (mods - rs)).sum()) + 4 * deg * U * (1 + abs(target))
        product_ok = abs(log_prod - target) <= tol
    return bool(sum_ok), bool(product_ok)


def certify_annulus(p: SparsePoly, lower: float | None, upper: float | None,
                    residual_tol: float = 1e-10, seed: int = 0, label: str = "",
                    m: int | None = None, n: int | None = None, regime: str = "") -> RootReport:
    """Solve p and check that every certified zero lies strictly inside the annulus."""
    sol = solve_sparse(p, residual_tol=residual_tol, seed=seed)
    sum_ok, prod_ok = _vieta(p, sol)
    real_count = sum(1 for flag in sol.real if flag)
    return RootReport(
        m=m,
        n=n,
        roots=sol.roots,
        radii=sol.radii,
        lower_bound=lower,
        upper_bound=upper,
        all_inside_annulus=_annulus_ok(sol, lower, upper),
        precision_used=sol.precision_used,
        degree=p.degree,
        real_count=real_count,
        vieta_sum_ok=sum_ok,
        vieta_product_ok=prod_ok,
        regime=regime,
        clusters=sol.clusters,
        label=label,
        real=list(sol.real),
    )


def all_roots(m: int, n: int, residual_tol: float = 1e-10, degree_cap: int = DEFAULT_DEGREE_CAP,
              seed: int = 0) -> RootReport:
    """Certified zeros of f_{m,n} with the annulus bounds that apply at (m, n)."""
    if n < m:
        raise ValueError(f"f_{{m,n}} is constant for n < m (m={m}, n={n})")
    if binomial(n, m) > degree_cap:
        raise DegreeCapExceeded(f"degree C({n},{m}) = {binomial(n, m)} exceeds cap {degree_cap}")
    lower = lower_bound(m, n) if in_lower_regime(m, n) else None
    upper = upper_bound(m, n) if in_upper_regime(m, n) else None
    regime = upper_regime_label(m, n) if upper is not None else "out-of-regime"
    return certify_annulus(f_cached(m, n), lower, upper, residual_tol, seed, f"f[{m},{n}]", m, n, regime)


def sign_at_minus_one(m: int, n: int) -> int:
    """Exact f_{m,n}(-1)."""
    value = eval_exact(f_cached(m, n), -1)
    return int(value)


def binomial_parity(n: int, m: int) -> int:
    """C(n, m) mod 2 by carry detection: odd iff adding m and n-m in base 2 never carries."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n (got n={n}, m={m})")
    return 1 if (m & (n - m)) == 0 else 0


def _parity(n: int, m: int) -> int:
    return binomial_parity(n, m) if 0 <= m <= n else 0


def expected_parity_period(m: int) -> int:
    """The power of two 2^v with 2^(v-1) <= m < 2^v."""
    return 1 << m.bit_length()


def parity_word(m: int, n_lo: int, n_hi: int) -> list[int]:
    return [_parity(n, m) for n in range(n_lo, n_hi + 1)]


def detect_period(seq: list, max_period: int | None = None, min_repeats: int = 2) -> int | None:
    """Smallest p such that seq[i] == seq[i + p] throughout and the window spans ``min_repeats`` periods."""
    n = len(seq)
    limit = n // min_repeats if max_period is None else min(max_period, n // min_repeats)
    for p in range(1, limit + 1):
        if all(seq[i] == seq[i + p] for i in range(n - p)):
            return p
    return None


def detect_eventual_period(seq: list, min_repeats: int = 2, min_tail: int = 4) -> tuple[int, int] | None:
    """(offset, period) explaining the longest periodic tail, then the shortest period.

    Tails shorter than ``min_tail`` terms are not trusted.
    """
    for start in range(len(seq) - min_tail + 1):
        p = detect_period(seq[start:], min_repeats=min_repeats)
        if p is not None:
            return start, p
    return None


def both_odd_positions(m: int, n_lo: int, n_hi: int) -> list[int]:
    """n in range with C(n, m) and C(n-1, m) both odd."""
    return [n for n in range(max(n_lo, 1), n_hi + 1) if _parity(n, m) and _parity(n - 1, m)]


@dataclass
class ParityReport:
    m: int
    n_lo: int
    n_hi: int
    word: list[int]
    period_detected: int | None
    expected_period: int
    both_odd_at: list[int]
    verdict: str
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n_range": [self.n_lo, self.n_hi],
            "word": "".join(map(str, self.word)),
            "period_detected": self.period_detected,
            "expected_period": self.expected_period,
            "both_odd_at": self.both_odd_at,
            "pass": self.verdict == PASS,
            "detail": self.detail,
        }


def parity_report(m: int, n_lo: int, n_hi: int) -> ParityReport:
    """Parity word of (C(n, m))_n with the two adjacent-parity claims checked.

    For odd m the coefficients C(n, m) and C(n-1, m) are never both odd; for
    even m they are both odd at least once in every full period.  The word is
    periodic with period a power of two just above m, which needs two full
    periods in the window to be detected.
    """
    word = parity_word(m, n_lo, n_hi)
    expected = expected_parity_period(m)
    period = detect_period(word)
    both = both_odd_positions(m, n_lo, n_hi)
    problems = []
    if period is not None and expected % period:
        problems.append(f"detected period {period} does not divide {expected}")
    if len(word) >= 2 * expected and period is None:
        problems.append("no period detected over two full periods")
    if m % 2 == 1:
        if both:
            problems.append(f"both odd at n={both[:5]}")
    elif m >= 2:
        for start in range(max(n_lo, 1), n_hi - expected + 2):
            window = range(start, start + expected)
            if not any(n in both for n in window):
                problems.append(f"no both-odd pair in n={start}..{start + expected - 1}")
                break
    return ParityReport(m, n_lo, n_hi, word, period, expected, both, FAIL if problems else PASS, "; ".join(problems))


@dataclass
class HeuristicMatch:
    label: str
    predicted: float
    matched_root: float | None
    gap: float | None

    def to_json(self) -> dict:
        return {"label": self.label, "predicted": self.predicted, "matched_root": self.matched_root, "gap": self.gap}


def real_roots(m: int, n: int, residual_tol: float = 1e-10, degree_cap: int = DEFAULT_DEGREE_CAP,
               seed: int = 0) -> list[float]:
    """Distinct real zeros of f_{m,n}, exact isolation when the degree allows it."""
    p = f_cached(m, n)
    if p.degree < 1:
        return []
    if p.degree <= STURM_DEGREE_CAP:
        rc = count_real_roots(m, n)
        chain = family_chain(m, n)
        return [float(refine_root(chain, a, b)) for a, b in rc.isolating_intervals]
    rep = all_roots(m, n, residual_tol, degree_cap, seed)
    return sorted(z.real for z, flag in zip(rep.roots, rep.real) if flag)


def heuristic_predictions(m: int, n: int) -> list[tuple[str, float]]:
    """Predicted real zeros from two-term truncations of f_{m,n}."""
    f0 = sum(binomial(n, j) for j in range(m))
    out = [
        ("constant-linear", -f0 / binomial(n, m)),
        ("minus-m-over-n", -m / n),
    ]
    if m % 2 == 1:
        out.append(("odd-root-as-stated", -(((m + 1) / n) ** (1 / m))))
        if n > m:
            out.append(("odd-root-truncation", -(((m + 1) / (n - m)) ** (1 / m))))
    return out


def heuristic_roots(m: int, n: int, residual_tol: float = 1e-10, seed: int = 0) -> list[HeuristicMatch]:
    """Match each predicted zero to the nearest real zero; gaps are reported, not judged."""
    reals = real_roots(m, n, residual_tol, seed=seed)
    out = []
    for label, pred in heuristic_predictions(m, n):
        if reals:
            best = min(reals, key=lambda x: abs(x - pred))
            out.append(HeuristicMatch(label, pred, best, abs(best - pred)))
        else:
            out.append(HeuristicMatch(label, pred, None, None))
    return out


def _row_verdict(m: int, n: int, count: int) -> str:
    if m == 2:
        return PASS if count == n // 2 else REFUTED
    if m >= 4 and m % 2 == 0:
        return EVIDENCE if count <= n // m else REFUTED
    return RECORDED


def roots_left_of_minus_one(m: int, n: int) -> int:
    """Distinct zeros of f_{m,n} in (-inf, -1)."""
    p = f_cached(m, n)
    if p.degree < 1:
        return 0
    chain = family_chain(m, n)
    at = variations_at(chain, Fraction(-1))
    # a zero at -1 itself would sit in (-1 - 0, -1]; exclude it
    on = 1 if eval_exact(p, -1) == 0 else 0
    return variations_at(chain, None) - at - on


@dataclass
class ConjectureScan:
    rows: list[ScanRow]
    parity: list[ParityReport]
    sign_failures: list[tuple[int, int, int]]
    left_root_failures: list[tuple[int, int]]

    @property
    def refuted(self) -> bool:
        return any(r.verdict == REFUTED for r in self.rows)

    @property
    def failed(self) -> bool:
        return bool(self.sign_failures or self.left_root_failures) or any(p.verdict == FAIL for p in self.parity)


def conjecture45_46_scan(m_range: range, n_range: range, degree_cap: int = STURM_DEGREE_CAP,
                         sign_n_max: int | None = None) -> ConjectureScan:
    """Tabulate N_m(n) with the per-m verdicts and the supporting parity facts.

    Rows carry the real-zero count; ``max_modulus``/``min_modulus`` are the
    extreme moduli among the real zeros.  For odd m the detected eventual
    period of the count sequence is stored on every row of that m.
    """
    rows: list[ScanRow] = []
    parity: list[ParityReport] = []
    sign_failures = []
    left_failures = []
    for m in m_range:
        m_rows = []
        for n in n_range:
            if n < 1:
                continue
            if binomial(n, m) > degree_cap:
                m_rows.append(ScanRow(m, n, None, None, None, None, None, None, SKIPPED))
                continue
            rc = count_real_roots(m, n, cap=degree_cap)
            moduli = []
            if rc.isolating_intervals:
                chain = family_chain(m, n)
                moduli = [abs(float(refine_root(chain, a, b))) for a, b in rc.isolating_intervals]
            lo = lower_bound(m, n) if m >= 2 and in_lower_regime(m, n) else None
            hi = upper_bound(m, n) if m >= 2 and in_upper_regime(m, n) else None
            m_rows.append(
                ScanRow(m, n, rc.count, None, lo, hi, max(moduli) if moduli else None,
                        min(moduli) if moduli else None, _row_verdict(m, n, rc.count))
            )
            if m % 2 == 1 and m >= 3 and n >= m and binomial(n, m) % 2 == 1:
                # f(-1) > 0 with odd degree and positive lead forces a zero left of -1
                if roots_left_of_minus_one(m, n) < 1:
                    left_failures.append((m, n))
        if m % 2 == 1:
            counts = [r.count for r in m_rows if r.count is not None]
            ev = detect_eventual_period(counts)
            period = ev[1] if ev else None
            for r in m_rows:
                r.period_detected = period
        rows.extend(m_rows)
        ns = [n for n in n_range]
        if ns and m >= 1:
            parity.append(parity_report(m, max(ns[0], 0), ns[-1]))
        if m % 2 == 1 and m >= 3:
            top = sign_n_max if sign_n_max is not None else (ns[-1] if ns else 0)
            for n in range(0, top + 1):
                v = sign_at_minus_one(m, n)
                if v <= 0:
                    sign_failures.append((m, n, v))
    return ConjectureScan(rows, parity, sign_failures, left_failures)


def random_upper_family(rng: np.random.Generator, m: int, n: int) -> SparsePoly:
    """z^C(n,m) + sum a_k z^(b_k) with |a_k| <= C(n,k) and b_k <= k C(n-1,m)/(n-m)."""
    terms = [(binomial(n, m), 1)]
    cap = binomial(n - 1, m)
    for k in range(n):
        top = binomial(n, k)
        a = int(rng.integers(-top, top + 1))
        b = int(rng.integers(0, k * cap // (n - m) + 1))
        terms.append((b, a))
    return SparsePoly(terms)


def random_lower_family(rng: np.random.Generator, m: int, n: int) -> SparsePoly:
    """c_0 + c_1 z + sum c_j z^(d_j) with |c_0| >= C(n+1,m-1), |c_j| <= C(n,m+j-1), d_j >= (m+1)(j-1)."""
    c0 = binomial(n + 1, m - 1)
    c0 += int(rng.integers(0, c0 + 1))
    if rng.integers(0, 2):
        c0 = -c0
    terms = [(0, c0)]
    for j in range(1, n - m + 2):
        top = binomial(n, m + j - 1)
        c = int(rng.integers(-top, top + 1))
        d = 1 if j == 1 else (m + 1) * (j - 1) + int(rng.integers(0, m + 2))
        terms.append((d, c))
    return SparsePoly(terms)


def random_family_reports(count: int = 20, seed: int = 0, residual_tol: float = 1e-10,
                          upper_mn: tuple[int, int] = (3, 19),
                          lower_m: int = 3, lower_n: tuple[int, int] = (9, 15)) -> list[RootReport]:
    """Solve pseudorandom members of both general families against their bounds."""
    rng = np.random.default_rng(seed)
    reports = []
    m, n = upper_mn
    hi = 1 + math.factorial(m) / (n - m) ** (m - 2)
    for i in range(count):
        p = random_upper_family(rng, m, n)
        reports.append(certify_annulus(p, None, hi, residual_tol, seed, f"upper-family#{i}", m, n, "general"))
    for i in range(count):
        nn = int(rng.integers(lower_n[0], lower_n[1] + 1))
        p = random_lower_family(rng, lower_m, nn)
        if p.degree < 1:
            continue
        lo = lower_m / (nn - lower_m + 1)
        reports.append(certify_annulus(p, lo, None, residual_tol, seed, f"lower-family#{i}", lower_m, nn, "general"))
    return reports


def exponent_growth_failures(m_range: range = range(3, 9), j_range: range = range(2, 51)) -> list[tuple[int, int]]:
    return [(m, j) for m in m_range for j in j_range if not exponent_growth_ok(m, j)]


__all__ = [
    "OutOfRegime",
    "RootReport",
    "ScanRow",
    "ParityReport",
    "HeuristicMatch",
    "ConjectureScan",
    "all_roots",
    "certify_annulus",
    "sign_at_minus_one",
    "binomial_parity",
    "parity_word",
    "parity_report",
    "detect_period",
    "detect_eventual_period",
    "expected_parity_period",
    "both_odd_positions",
    "heuristic_predictions",
    "heuristic_roots",
    "real_roots",
    "roots_left_of_minus_one",
    "conjecture45_46_scan",
    "random_upper_family",
    "random_lower_family",
    "random_family_reports",
    "exponent_growth_failures",
]
