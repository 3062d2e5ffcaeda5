"""Exact checkers for the identities satisfied by the H and f families.

Each checker builds both sides of one identity independently and returns an
:class:`IdentityReport`; a failing report carries the first differing
location and the two sides there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .family import (
    ExponentRule,
    FamilyHandle,
    IndexOutOfRange,
    binomial,
    f_cached,
    forward_difference,
    h_value,
)
from .polycore import (
    ONE,
    ZERO,
    SparsePoly,
    derivative,
    eval_exact,
    format_poly,
    linear_combination,
    mul,
    shift,
    substitute_neg,
)
from .series import TruncatedSeries, geometric_series

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
AMBIGUOUS_SUPPORT = "ambiguous-support"

# exact partial sums need z**h_j as a rational; beyond this exponent they are impractical
HALVING_EXPONENT_LIMIT = 200_000


class InvalidDomain(ValueError):
    pass


@dataclass
class IdentityReport:
    identity_id: str
    params: dict[str, Any]
    verdict: str = PASS
    witness: dict[str, Any] | None = None
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Failures are the only non-passing verdict; inapplicable checks are not errors."""
        return self.verdict != FAIL

    def to_json(self) -> dict[str, Any]:
        out = {
            "id": self.identity_id,
            "params": self.params,
            "pass": self.passed,
            "verdict": self.verdict,
            "witness": self.witness,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


def _poly_witness(location, lhs: SparsePoly, rhs: SparsePoly) -> dict[str, Any]:
    diff = lhs - rhs
    e, _ = diff.terms[0]
    return {
        "location": location,
        "exponent": e,
        "lhs_term": lhs.coeff(e),
        "rhs_term": rhs.coeff(e),
        "lhs": format_poly(lhs),
        "rhs": format_poly(rhs),
    }


def _compare(identity_id: str, params: dict, lhs: SparsePoly, rhs: SparsePoly, location=None) -> IdentityReport:
    if lhs == rhs:
        return IdentityReport(identity_id, params)
    return IdentityReport(identity_id, params, FAIL, _poly_witness(location, lhs, rhs))


def _compare_series(identity_id: str, params: dict, lhs: TruncatedSeries, rhs: TruncatedSeries) -> IdentityReport:
    ok, n = lhs.equal_up_to(rhs)
    if ok:
        return IdentityReport(identity_id, params, detail={"order": min(lhs.order, rhs.order)})
    return IdentityReport(identity_id, params, FAIL, _poly_witness({"t_power": n}, lhs[n], rhs[n]))


def _require_domain(rule: ExponentRule, top: int) -> None:
    if not rule.covers(top):
        raise IndexOutOfRange(f"rule {rule} is not defined at index {top}")


def check_gf(rule: ExponentRule, N: int) -> IdentityReport:
    """Generating function of (H_n) as a formal series in t, truncated at t**N.

    The right side is assembled from powers of 1/(1-t) by series
    multiplication, never from binomial coefficients, so it is independent of
    the construction of H_n.
    """
    _require_domain(rule, N)
    params = {"rule": str(rule), "N": N}
    geo = geometric_series(N)
    rhs = TruncatedSeries.from_coeffs([], N)
    # block_j = t^j / (1-t)^(j+1)
    block = geo
    for j in range(N + 1):
        term = block.map_coeffs(lambda c, e=h_value(rule, j): mul(c, SparsePoly.monomial(e)))
        rhs = rhs + term.truncate(N)
        block = (block * geo).shift_t(1).truncate(N)
    fam = FamilyHandle(rule)
    lhs = TruncatedSeries.from_function(fam.H, N)
    return _compare_series("gen-function", params, lhs, rhs)


def _abs_pow(z: Fraction, e: int) -> Fraction:
    return abs(z) ** e


def halving_partial_sums(rule: ExponentRule, z: Fraction, N: int) -> dict[str, Fraction]:
    """Exact partial sums of both sides of the t = 1/2 identity and certified tails.

    With ``w_j = sum_{n >= max(N, j)} C(n, j) / 2**(n+1)`` (which is 1 for
    ``j >= N``) the right-side tail equals ``sum_j z**h_j * w_j``.  For ``j < N``
    ``w_j = 1 - sum_{n=j}^{N-1} C(n, j)/2**(n+1)`` exactly; for ``j >= N`` the
    contribution is bounded like the left tail by ``|z|**h_N / (1 - |z|)``,
    valid once ``h`` is strictly increasing from index ``N``.
    """
    fam = FamilyHandle(rule)
    lhs = sum((z ** h_value(rule, j) for j in range(N)), Fraction(0))
    rhs = sum((eval_exact(fam.H(n), z) / 2 ** (n + 1) for n in range(N)), Fraction(0))
    az = abs(z)
    geometric_tail = _abs_pow(z, h_value(rule, N)) / (1 - az)
    right_tail = Fraction(0)
    for j in range(N):
        w = 1 - sum((Fraction(binomial(n, j), 2 ** (n + 1)) for n in range(j, N)), Fraction(0))
        right_tail += _abs_pow(z, h_value(rule, j)) * w
    right_tail += geometric_tail
    return {"lhs": lhs, "rhs": rhs, "left_tail": geometric_tail, "right_tail": right_tail}


def check_halving(rule: ExponentRule, z, N: int, tol: float = 1e-9) -> IdentityReport:
    """Compare partial sums of ``sum_j z**h_j`` and ``sum_n H_n(z)/2**(n+1)``."""
    z = Fraction(z)
    if abs(z) >= 1:
        raise InvalidDomain(f"|z| must be < 1, got {z}")
    start = rule.strictly_increasing_from()
    if start is None:
        raise InvalidDomain(f"rule {rule} has no known tail; cannot bound the infinite sums")
    if N < start:
        raise InvalidDomain(f"N = {N} precedes the strictly increasing tail (from index {start})")
    if h_value(rule, N) > HALVING_EXPONENT_LIMIT:
        raise InvalidDomain(f"h_{N} = {h_value(rule, N)} is too large for exact partial sums")
    params = {"rule": str(rule), "z": str(z), "N": N, "tol": tol}
    s = halving_partial_sums(rule, z, N)
    diff = abs(s["lhs"] - s["rhs"])
    allowance = Fraction(tol) + s["left_tail"] + s["right_tail"]
    detail = {
        "discrepancy": float(diff),
        "left_tail_bound": float(s["left_tail"]),
        "right_tail_bound": float(s["right_tail"]),
    }
    if diff <= allowance:
        return IdentityReport("halving", params, detail=detail)
    return IdentityReport(
        "halving", params, FAIL,
        {"location": {"N": N}, "lhs_term": float(s["lhs"]), "rhs_term": float(s["rhs"])},
        detail,
    )


def _one_plus_t_power(k: int, order: int) -> TruncatedSeries:
    return TruncatedSeries.tpoly([binomial(k, i) for i in range(k + 1)], order)


def finite_transform_sides(rule: ExponentRule, n: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of ``sum_k C(n,k) t^k H_k = sum_j C(n,j) t^j (1+t)^(n-j) z^h_j``."""
    _require_domain(rule, n)
    fam = FamilyHandle(rule)
    lhs = TruncatedSeries.from_coeffs([binomial(n, k) * fam.H(k) for k in range(n + 1)], n)
    rhs = TruncatedSeries.from_coeffs([], n)
    for j in range(n + 1):
        zpart = SparsePoly.monomial(fam.h(j), binomial(n, j))
        tpart = _one_plus_t_power(n - j, n).shift_t(j).truncate(n)
        rhs = rhs + tpart.map_coeffs(lambda c, zp=zpart: mul(c, zp))
    return lhs, rhs


def check_finite_transform(rule: ExponentRule, n: int) -> IdentityReport:
    lhs, rhs = finite_transform_sides(rule, n)
    return _compare_series("finite-transform", {"rule": str(rule), "n": n}, lhs, rhs)


def check_parity_reflection(rule: ExponentRule, n: int) -> IdentityReport:
    """``H_n(-z) = sum_k C(n,k) (-1)^k 2^(n-k) H_k(z)`` when h_j = j (mod 2)."""
    _require_domain(rule, n)
    params = {"rule": str(rule), "n": n}
    bad = [j for j in range(n + 1) if (h_value(rule, j) - j) % 2]
    if bad:
        return IdentityReport(
            "parity-reflection", params, NOT_APPLICABLE,
            detail={"reason": f"h_{bad[0]} = {h_value(rule, bad[0])} has the wrong parity"},
        )
    fam = FamilyHandle(rule)
    lhs = substitute_neg(fam.H(n))
    rhs = linear_combination(((-1) ** k * binomial(n, k) * 2 ** (n - k), fam.H(k)) for k in range(n + 1))
    return _compare("parity-reflection", params, lhs, rhs)


def alternating_moment_sum(rule: ExponentRule, n: int, nu: int) -> SparsePoly:
    """``sum_k C(n,k) (-1)^k k^nu H_k``."""
    fam = FamilyHandle(rule)
    return linear_combination(((-1) ** k * binomial(n, k) * k**nu, fam.H(k)) for k in range(n + 1))


def check_inverse_transform(rule: ExponentRule, n: int, nu: int) -> IdentityReport:
    """The binomial inverse (nu = 0) and its first moment (nu = 1)."""
    if nu not in (0, 1):
        raise ValueError("nu must be 0 or 1")
    _require_domain(rule, n)
    params = {"rule": str(rule), "n": n, "nu": nu}
    lhs = alternating_moment_sum(rule, n, nu)
    sign = (-1) ** n
    if nu == 0:
        rhs = SparsePoly.monomial(h_value(rule, n), sign)
    elif n == 0:
        rhs = ZERO
    else:
        rhs = SparsePoly([(h_value(rule, n), sign * n), (h_value(rule, n - 1), sign * n)])
    return _compare("inverse-transform", params, lhs, rhs)


def check_span(rule: ExponentRule, n: int) -> IdentityReport:
    """Each z^h_k is recovered from H_0..H_k by the unitriangular inverse transform."""
    _require_domain(rule, n)
    fam = FamilyHandle(rule)
    for k in range(n + 1):
        # row k of the inverse of the lower unitriangular matrix [C(k, j)]
        rebuilt = linear_combination(((-1) ** (k - j) * binomial(k, j), fam.H(j)) for j in range(k + 1))
        target = SparsePoly.monomial(fam.h(k))
        if rebuilt != target:
            return IdentityReport("span", {"rule": str(rule), "n": n}, FAIL, _poly_witness({"k": k}, rebuilt, target))
    return IdentityReport("span", {"rule": str(rule), "n": n})


def interpolate(xs: list[int], ys: list[Fraction]) -> list[Fraction]:
    """Monomial coefficients (ascending) of the interpolating polynomial, exactly."""
    coeffs = [Fraction(0)] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xj * basis[d + 1]
            denom *= xi - xj
        for d, b in enumerate(basis):
            coeffs[d] += yi * b / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_at(coeffs: list[Fraction], x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _window_distinct(rule: ExponentRule, n: int, nu: int) -> bool:
    exps = [h_value(rule, j) for j in range(max(0, n - nu), n + 1)]
    return all(a < b for a, b in zip(exps, exps[1:]))


def check_support_collapse(rule: ExponentRule, n: int, nu: int, extra_points: int = 2) -> IdentityReport:
    """Support of the nu-th alternating moment sum and polynomiality of its coefficients.

    The sum must be supported on ``z^h_{n-nu}..z^h_n``.  For each offset ``i``
    the signed coefficient ``(-1)^n a_i(n)`` of ``z^h_{n-i}`` is sampled on the
    ``nu + 1 + extra_points`` consecutive values ``n, n+1, ...``; the
    interpolant through the first ``nu + 1`` samples must reproduce the rest
    (degree at most nu) and have integer coefficients.
    """
    params = {"rule": str(rule), "n": n, "nu": nu}
    count = nu + 1 + extra_points
    ns = list(range(n, n + count))
    _require_domain(rule, ns[-1])
    for k in ns:
        if not _window_distinct(rule, k, nu):
            return IdentityReport(
                "support-collapse", params, AMBIGUOUS_SUPPORT,
                detail={"reason": f"exponents h_{max(0, k - nu)}..h_{k} are not distinct"},
            )
    samples: dict[int, list[Fraction]] = {i: [] for i in range(nu + 1)}
    for k in ns:
        lhs = alternating_moment_sum(rule, k, nu)
        allowed = {h_value(rule, k - i): i for i in range(min(nu, k) + 1)}
        stray = [(e, c) for e, c in lhs.terms if e not in allowed]
        if stray:
            e, c = stray[0]
            return IdentityReport(
                "support-collapse", params, FAIL,
                {"location": {"n": k, "exponent": e}, "lhs_term": c, "rhs_term": 0},
            )
        for i in range(nu + 1):
            coeff = lhs.coeff(h_value(rule, k - i)) if i <= k else 0
            samples[i].append(Fraction((-1) ** k * coeff))
    fitted = {}
    for i, ys in samples.items():
        poly = interpolate(ns[: nu + 1], ys[: nu + 1])
        for x, y in zip(ns[nu + 1:], ys[nu + 1:]):
            if _poly_at(poly, x) != y:
                return IdentityReport(
                    "support-collapse", params, FAIL,
                    {"location": {"i": i, "n": x}, "lhs_term": str(y), "rhs_term": str(_poly_at(poly, x))},
                )
        if any(c.denominator != 1 for c in poly) or len(poly) - 1 > nu:
            return IdentityReport(
                "support-collapse", params, FAIL,
                {"location": {"i": i}, "lhs_term": [str(c) for c in poly], "rhs_term": "integer polynomial of degree <= nu"},
            )
        fitted[i] = [int(c) for c in poly]
    return IdentityReport("support-collapse", params, detail={"signed_coefficients": fitted})


def moment_sum(n: int, j: int, nu: int) -> int:
    return sum((-1) ** k * binomial(n, k) * binomial(k, j) * k**nu for k in range(n + 1))


def check_moment_vanishing(n: int, nu: int) -> IdentityReport:
    """``sum_k (-1)^k C(n,k) C(k,j) k^nu = 0`` for ``j = 0..n-nu-1``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    params = {"n": n, "nu": nu}
    for j in range(0, n - nu):
        s = moment_sum(n, j, nu)
        if s:
            return IdentityReport("moment-vanishing", params, FAIL, {"location": {"j": j}, "lhs_term": s, "rhs_term": 0})
    return IdentityReport("moment-vanishing", params, detail={"checked_j": max(0, n - nu)})


def check_difference_identity(rule: ExponentRule, n: int, r: int) -> IdentityReport:
    """``Delta^r H_n = sum_k C(n,k) z^h_{k+r}``."""
    _require_domain(rule, n + r)
    lhs = forward_difference(rule, n, r)
    rhs = SparsePoly((h_value(rule, k + r), binomial(n, k)) for k in range(n + 1))
    return _compare("difference", {"rule": str(rule), "n": n, "r": r}, lhs, rhs)


def check_derivative_identity(m: int, n: int) -> IdentityReport:
    """``z f'_{m,n} = C(n,m) sum_i (-1)^i C(m,i) f_{m,n-i}``."""
    if n < m:
        raise ValueError("requires n >= m")
    lhs = shift(derivative(f_cached(m, n)), 1)
    rhs = binomial(n, m) * linear_combination(
        ((-1) ** i * binomial(m, i), f_cached(m, n - i)) for i in range(m + 1)
    )
    return _compare("derivative", {"m": m, "n": n}, lhs, rhs)


def check_inverse_derivative(m: int, n: int) -> IdentityReport:
    """f_{m,n} rebuilt from the derivatives f'_{m,i}, i = m..n, with rational weights.

    The weights C(n-i+m-1, m-1)/C(i, m) are rational; both sides are scaled by
    the common denominator before the exact comparison.
    """
    if not 1 <= m <= n:
        raise ValueError("requires 1 <= m <= n")
    weights = {i: Fraction(binomial(n - i + m - 1, m - 1), binomial(i, m)) for i in range(m, n + 1)}
    L = math.lcm(*(w.denominator for w in weights.values()))
    const = sum(binomial(n, i) for i in range(m))
    lhs = L * f_cached(m, n)
    rhs = SparsePoly.constant(L * const) + shift(
        linear_combination((int(w * L), derivative(f_cached(m, i))) for i, w in weights.items()), 1
    )
    return _compare("inverse-derivative", {"m": m, "n": n}, lhs, rhs, {"denominator": L})


def pde_sides(m: int, N: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of the order-m PDE for F_m(z,t) = sum f_{m,n} t^n, scaled by m!.

    ``m! z dF/dz = (-t)^m sum_j (m!/j!) C(m,j) (t-1)^j d^jF/dt^j``.
    """
    F = TruncatedSeries.from_function(lambda n: f_cached(m, n), N + m)
    lhs = F.map_coeffs(lambda p: shift(derivative(p), 1)).scale(math.factorial(m))
    neg_t_m = TruncatedSeries.tpoly([0] * m + [(-1) ** m], N + m)
    acc = None
    for j in range(m + 1):
        weight = math.factorial(m) // math.factorial(j) * binomial(m, j)
        t_minus_1 = TruncatedSeries.tpoly([binomial(j, i) * (-1) ** (j - i) for i in range(j + 1)], N + m)
        term = (t_minus_1 * F.derivative_t(j)).scale(weight)
        acc = term if acc is None else acc + term
    rhs = neg_t_m * acc
    return lhs.truncate(N), rhs.truncate(N)


def check_pde(m: int, N: int) -> IdentityReport:
    if N <= m:
        raise ValueError("requires N > m")
    lhs, rhs = pde_sides(m, N)
    return _compare_series("pde", {"m": m, "N": N}, lhs, rhs)


def closed_form_first_family(N: int) -> TruncatedSeries:
    """1/(1 - t(1+z)) truncated: the m = 1 generating function."""
    one_plus_z = SparsePoly([(0, 1), (1, 1)])
    coeffs = [ONE]
    for _ in range(N):
        coeffs.append(mul(coeffs[-1], one_plus_z))
    return TruncatedSeries.from_coeffs(coeffs, N)
