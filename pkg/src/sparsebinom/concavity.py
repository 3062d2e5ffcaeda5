"""Log-concavity defects of the f_{m,n} family and their certificates.

Theorem-backed facts (nonnegative coefficients of F and G, the lower bound on
S_m(n)) are returned as hard checks.  The iterated-L scan only collects
evidence: a row that contradicts the expected pattern is data, not an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .family import binomial, f_cached
from .polycore import (
    ONE_MINUS_Z,
    SparsePoly,
    all_nonnegative,
    coefficient_sum,
    div_one_minus_z,
    eval_exact,
    first_negative,
    linear_combination,
    mul,
    one_minus_z_multiplicity,
    sub,
    taylor_shift,
)


class ConcavityError(ArithmeticError):
    """A proved statement failed on a concrete instance."""


@dataclass
class ConcavityCertificate:
    object_id: str
    nonneg: bool
    first_negative: tuple[int, int] | None
    one_minus_z_mult: int
    params: dict[str, Any] = field(default_factory=dict)
    expected_mult: int | None = None
    positive: bool | None = None

    @property
    def matches_expectation(self) -> bool:
        ok = self.nonneg
        if self.expected_mult is not None:
            ok = ok and self.one_minus_z_mult == self.expected_mult
        if self.positive is not None:
            ok = ok and self.positive
        return ok

    @property
    def verdict(self) -> str:
        # rows that carry a positivity expectation are conjecture evidence
        if self.matches_expectation:
            return "pass"
        return "CONJECTURE-REFUTED" if self.positive is not None else "fail"

    def to_json(self) -> dict[str, Any]:
        return {
            "object_id": self.object_id,
            "params": self.params,
            "pass": self.matches_expectation,
            "verdict": self.verdict,
            "nonneg": self.nonneg,
            "first_negative": list(self.first_negative) if self.first_negative else None,
            "one_minus_z_mult": self.one_minus_z_mult,
            "expected_mult": self.expected_mult,
            "positive": self.positive,
        }


def certify(object_id: str, p: SparsePoly, params=None, mult: int = 0) -> ConcavityCertificate:
    neg = first_negative(p)
    return ConcavityCertificate(object_id, neg is None, neg, mult, dict(params or {}))


def L_apply(seq: Callable[[int], SparsePoly], n: int) -> SparsePoly:
    """``a_n^2 - a_{n-1} a_{n+1}`` for an indexed polynomial sequence."""
    a = seq(n)
    return sub(mul(a, a), mul(seq(n - 1), seq(n + 1)))


def F_poly(m: int, n: int) -> SparsePoly:
    """``(f_n^2 - f_{n-1} f_{n+1}) / (1 - z)`` for the family of index m."""
    if n < 1:
        raise ValueError("requires n >= 1")
    return div_one_minus_z(L_apply(lambda k: f_cached(m, k), n))


def F_k_poly(m: int, n: int, k: int) -> SparsePoly:
    if k < 1 or n - k < 0:
        raise ValueError("requires k >= 1 and n >= k")
    f = f_cached(m, n)
    return div_one_minus_z(sub(mul(f, f), mul(f_cached(m, n - k), f_cached(m, n + k))))


def G_poly(m: int, n: int, k: int) -> SparsePoly:
    """``(f_{2n} - f_{n-k} f_{n+k}) / (z - 1)``."""
    if k < 1 or n - k < 0:
        raise ValueError("requires k >= 1 and n >= k")
    num = sub(f_cached(m, 2 * n), mul(f_cached(m, n - k), f_cached(m, n + k)))
    return -div_one_minus_z(num)


def F_mm_display(m: int) -> SparsePoly:
    """Closed form of F_{m,m}: 2^(m-1)(z^m+...+z^2) + (2^(m-1)-1) z + (m-2) 2^(m-1) + 1."""
    half = 2 ** (m - 1)
    terms = [(e, half) for e in range(2, m + 1)]
    terms += [(1, half - 1), (0, (m - 2) * half + 1)]
    return SparsePoly(terms)


# --- g_nu decomposition ------------------------------------------------------


def g_nu(m: int, n: int, nu: int) -> SparsePoly:
    return SparsePoly(
        (
            binomial(j, m) + binomial(nu - j, m),
            binomial(n, j) * binomial(n, nu - j) - binomial(n - 1, j) * binomial(n + 1, nu - j),
        )
        for j in range(nu + 1)
    )


def a_coefficient(n: int, nu: int, j: int) -> int:
    """Symmetrized coefficient of the j-th term of 2 g_nu."""
    return (
        2 * binomial(n, j) * binomial(n, nu - j)
        - binomial(n - 1, j) * binomial(n + 1, nu - j)
        - binomial(n + 1, j) * binomial(n - 1, nu - j)
    )


def a_closed_form(n: int, nu: int, j: int) -> Fraction | None:
    """Product form of the symmetrized coefficient; None where its denominator vanishes."""
    den = n * (n + 1 - nu + j) * (n + 1 - j)
    if den == 0:
        return None
    num = 2 * (2 * n + 1) * j * (nu - j) - (n + 1) * nu * (nu - 1)
    return Fraction(binomial(n, j) * binomial(n, nu - j) * num, den)


@dataclass
class GNuReport:
    m: int
    n: int
    nu: int
    g: SparsePoly
    coeffs: list[int]
    closed_form_ok: bool
    closed_form_skipped: list[int]
    symmetric: bool
    vanishes_at_one: bool
    zero_when_small: bool
    single_sign_change: bool
    quotient_nonneg: bool

    @property
    def ok(self) -> bool:
        return (
            self.closed_form_ok and self.symmetric and self.vanishes_at_one
            and self.zero_when_small and self.single_sign_change and self.quotient_nonneg
        )


def _single_sign_change(coeffs: list[int], nu: int) -> bool:
    """Negative run then nonnegative run over j = 0..nu//2, at most one zero after the switch.

    Leading zeros (where both binomial products vanish because nu - j > n + 1)
    are skipped.
    """
    half = coeffs[: nu // 2 + 1]
    i = 0
    while i < len(half) and half[i] == 0:
        i += 1
    rest = half[i:]
    if not rest:
        return True
    k = 0
    while k < len(rest) and rest[k] < 0:
        k += 1
    tail = rest[k:]
    return k >= 1 and all(c >= 0 for c in tail) and sum(1 for c in tail if c == 0) <= 1


def g_nu_decomposition(m: int, n: int, nu: int) -> GNuReport:
    if not (m >= 2 and n >= m and 0 <= nu <= 2 * n):
        raise ValueError("requires m >= 2, n >= m, 0 <= nu <= 2n")
    g = g_nu(m, n, nu)
    coeffs = [a_coefficient(n, nu, j) for j in range(nu + 1)]
    skipped = []
    closed_ok = True
    for j in range(nu + 1):
        cf = a_closed_form(n, nu, j)
        if cf is None:
            skipped.append(j)
        elif cf != coeffs[j]:
            closed_ok = False
    symmetric = all(coeffs[j] == coeffs[nu - j] for j in range(nu + 1))
    twice = SparsePoly((binomial(j, m) + binomial(nu - j, m), coeffs[j]) for j in range(nu + 1))
    closed_ok = closed_ok and twice == 2 * g
    vanishes = coefficient_sum(g) == 0
    zero_small = g.degree < 0 if nu <= m - 1 else True
    sign_ok = True if nu <= m - 1 or not any(coeffs) else _single_sign_change(coeffs, nu)
    quotient_nonneg = all_nonnegative(div_one_minus_z(g)) if vanishes else False
    return GNuReport(m, n, nu, g, coeffs, closed_ok, skipped, symmetric, vanishes, zero_small, sign_ok, quotient_nonneg)


def check_g_reassembly(m: int, n: int) -> bool:
    """Sum of g_nu over nu = 0..2n equals (1 - z) F_{m,n}."""
    total = linear_combination((1, g_nu(m, n, nu)) for nu in range(2 * n + 1))
    return total == mul(ONE_MINUS_Z, F_poly(m, n))


# --- pointwise samples -------------------------------------------------------

UNIT_SAMPLES = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
POSITIVE_SAMPLES = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))
NEGATIVE_SAMPLES = (Fraction(-1), Fraction(-1, 2), Fraction(-1, 4))


def sampled_log_concavity(m: int, n: int) -> list[tuple[str, Fraction, Fraction]]:
    """Violations of ``f_n^2 >= f_{n-1} f_{n+1}`` on [0, 1] and of ``F > 0`` for z >= 0.

    Both follow from proved statements, so an empty list is the only passing
    outcome.  Each violation is (what, z, value).
    """
    bad = []
    for z in UNIT_SAMPLES:
        a, b, c = (eval_exact(f_cached(m, k), z) for k in (n - 1, n, n + 1))
        if b * b - a * c < 0:
            bad.append(("defect", z, b * b - a * c))
    F = F_poly(m, n)
    for z in POSITIVE_SAMPLES:
        v = eval_exact(F, z)
        if v <= 0:
            bad.append(("F", z, v))
    return bad


def negative_axis_samples(m: int, n: int) -> list[tuple[Fraction, Fraction]]:
    """Points of [-1, 0) among the samples where F_{m,n} is negative (evidence for even m)."""
    F = F_poly(m, n)
    return [(z, v) for z in NEGATIVE_SAMPLES if (v := eval_exact(F, z)) < 0]


# --- constant-term defect S_m(n) ---------------------------------------------


def S_value(m: int, n: int) -> int:
    """``(sum_{j<m} C(n,j))^2 - (sum_{j<m} C(n-1,j)) (sum_{j<m} C(n+1,j))``."""
    if m < 2 or n < 1:
        raise ValueError("requires m >= 2, n >= 1")
    a = sum(binomial(n, j) for j in range(m))
    b = sum(binomial(n - 1, j) for j in range(m))
    c = sum(binomial(n + 1, j) for j in range(m))
    return a * a - b * c


@dataclass
class SBoundReport:
    m: int
    n_range: tuple[int, int]
    below_floor: list[int]
    equality_at: list[int]

    @property
    def ok(self) -> bool:
        """Floor respected, attained at n = m-1, and strict elsewhere when m >= 3.

        For m = 2 the defect is identically 1, so equality holds at every n.
        """
        lo, hi = self.n_range
        if self.below_floor:
            return False
        if lo <= self.m - 1 <= hi and self.m - 1 not in self.equality_at:
            return False
        if self.m >= 3:
            return self.equality_at in ([], [self.m - 1])
        return True


def check_S_bound(m: int, n_max: int) -> SBoundReport:
    """``S_m(n) >= 2^(m-2)`` for ``m-1 <= n <= n_max``."""
    floor = 2 ** (m - 2)
    lo = max(m - 1, 1)
    below, equal = [], []
    for n in range(lo, n_max + 1):
        v = S_value(m, n)
        if v < floor:
            below.append(n)
        elif v == floor:
            equal.append(n)
    return SBoundReport(m, (lo, n_max), below, equal)


def S_poly_value(m: int, x: int) -> int:
    """S_m evaluated as a polynomial in n at any integer x."""
    from .family import binomial_poly

    a = sum(binomial_poly(x, j) for j in range(m))
    b = sum(binomial_poly(x - 1, j) for j in range(m))
    c = sum(binomial_poly(x + 1, j) for j in range(m))
    return a * a - b * c


def _n_plus(c: int) -> SparsePoly:
    return SparsePoly([(0, c), (1, 1)])


def s_sequence(m: int) -> SparsePoly:
    """s_m as an integer polynomial in n via the three-term recurrence in m."""
    if m < 2:
        raise ValueError("requires m >= 2")
    prev, cur = SparsePoly.constant(1), _n_plus(2)
    if m == 2:
        return prev
    for k in range(4, m + 1):
        prev, cur = cur, mul(_n_plus(2), cur) - (k - 3) * mul(_n_plus(-k + 2), prev)
    return cur


def check_s_sequence(m: int) -> bool:
    """``s_m(n) prod_{j=1}^{m-2} (n - j) = (m-1) ((m-2)!)^2 S_m(n)`` for n = m..3m."""
    s = s_sequence(m)
    k = (m - 1) * math.factorial(m - 2) ** 2
    for n in range(m, 3 * m + 1):
        prod = math.prod(n - j for j in range(1, m - 1))
        if eval_exact(s, n) * prod != k * S_value(m, n):
            return False
    return True


def g_shifted(m: int) -> SparsePoly:
    """g_m(t) = s_m(t + m - 1) via its own recurrence in m."""
    if m < 2:
        raise ValueError("requires m >= 2")
    prev, cur = SparsePoly.constant(1), _n_plus(4)
    if m == 2:
        return prev
    for k in range(4, m + 1):
        prev, cur = cur, mul(_n_plus(3 * k - 5), cur) - 2 * (k - 3) * mul(_n_plus(k - 2), prev)
    return cur


@dataclass
class GShiftedReport:
    m: int
    g: SparsePoly
    matches_shift: bool
    degree_ok: bool
    leading_one: bool
    constant_ok: bool
    positive_integers: bool
    growth_ok: bool

    @property
    def ok(self) -> bool:
        return all((self.matches_shift, self.degree_ok, self.leading_one, self.constant_ok,
                    self.positive_integers, self.growth_ok))


def check_g_shifted(m: int) -> GShiftedReport:
    g = g_shifted(m)
    dense = [g.coeff(i) for i in range(m - 1)]
    growth = True
    if m >= 3:
        prev = g_shifted(m - 1)
        growth = all(g.coeff(i) > 2 * (m - 2) * prev.coeff(i) for i in range(m - 2))
    return GShiftedReport(
        m=m,
        g=g,
        matches_shift=g == taylor_shift(s_sequence(m), m - 1),
        degree_ok=g.degree == m - 2,
        leading_one=g.leading_coefficient == 1,
        constant_ok=g.coeff(0) == 2 ** (m - 2) * math.factorial(m - 1),
        positive_integers=all(c > 0 for c in dense),
        growth_ok=growth,
    )


# --- iterated L scan ---------------------------------------------------------


def iterated_L_table(m: int, top: int, k_max: int) -> list[dict[int, SparsePoly]]:
    """Levels 0..k_max of L iterated over n; level k is defined on k..top-k."""
    levels = [{j: f_cached(m, j) for j in range(top + 1)}]
    for k in range(1, k_max + 1):
        prev = levels[-1]
        levels.append({j: L_apply(prev.__getitem__, j) for j in range(k, top - k + 1)})
    return levels


def conjecture39_scan(n_max: int, k_max: int, m: int = 2) -> list[ConcavityCertificate]:
    """Evidence rows for L^k(f_{2,n}) / (1 - z)^(2^k - 1), k = 1..k_max, n = k..n_max."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    levels = iterated_L_table(m, n_max + k_max, k_max)
    rows = []
    for k in range(1, k_max + 1):
        for n in range(k, n_max + 1):
            value = levels[k][n]
            params = {"m": m, "k": k, "n": n}
            if not value:
                rows.append(ConcavityCertificate(f"L^{k}(f({m},{n}))", True, None, -1, params, 2**k - 1, False))
                continue
            mult, _ = one_minus_z_multiplicity(value)
            expected = 2**k - 1
            if mult >= expected:
                cofactor = value
                for _ in range(expected):
                    cofactor = div_one_minus_z(cofactor)
                neg = first_negative(cofactor)
                positive = neg is None and bool(cofactor)
            else:
                neg, positive = None, False
            rows.append(
                ConcavityCertificate(
                    f"L^{k}(f({m},{n}))", neg is None, neg, mult, params,
                    expected_mult=expected, positive=positive,
                )
            )
    return rows
