from fractions import Fraction

import pytest
import sympy

from sparsebinom import identities as ids
from sparsebinom.family import ExponentRule, IndexOutOfRange, f_poly
from sparsebinom.identities import (
    AMBIGUOUS_SUPPORT,
    FAIL,
    NOT_APPLICABLE,
    PASS,
    InvalidDomain,
    alternating_moment_sum,
    check_derivative_identity,
    check_difference_identity,
    check_finite_transform,
    check_gf,
    check_halving,
    check_inverse_derivative,
    check_inverse_transform,
    check_moment_vanishing,
    check_parity_reflection,
    check_pde,
    check_span,
    check_support_collapse,
    closed_form_first_family,
    interpolate,
    pde_sides,
)
from sparsebinom.polycore import SparsePoly

B = ExponentRule.binomial
IDENT = ExponentRule.table(range(40))


def assert_pass(report):
    assert report.verdict == PASS, report.witness
    assert report.passed and report.witness is None


@pytest.mark.parametrize("rule,N", [(B(1), 6), (B(2), 10), (IDENT, 5), (B(3), 12), (ExponentRule.geometric(), 8)])
def test_generating_function(rule, N):
    assert_pass(check_gf(rule, N))


def test_gf_needs_table_domain():
    with pytest.raises(IndexOutOfRange):
        check_gf(ExponentRule.table([0, 1, 2]), 5)


@pytest.mark.parametrize("rule,z,N", [(B(2), Fraction(1, 2), 40), (ExponentRule.geometric(), Fraction(1, 3), 10),
                                      (B(3), Fraction(-3, 4), 30), (B(1), Fraction(1, 5), 20)])
def test_halving_within_certified_tail(rule, z, N):
    report = check_halving(rule, z, N, 1e-9)
    assert_pass(report)
    assert report.detail["discrepancy"] <= report.detail["left_tail_bound"] + report.detail["right_tail_bound"] + 1e-9


def test_halving_at_zero_is_exact():
    # only zero exponents survive: m of them for binomial rules
    for m in (1, 2, 3):
        s = ids.halving_partial_sums(B(m), Fraction(0), m + 1)
        assert s["lhs"] == m
        assert_pass(check_halving(B(m), 0, m + 1))


def test_halving_domain_errors():
    with pytest.raises(InvalidDomain):
        check_halving(B(2), 1, 10)
    with pytest.raises(InvalidDomain):
        check_halving(ExponentRule.table([0, 1, 2]), Fraction(1, 2), 2)
    with pytest.raises(InvalidDomain):
        check_halving(B(4), Fraction(1, 2), 1)
    with pytest.raises(InvalidDomain):
        check_halving(ExponentRule.geometric(), Fraction(1, 2), 40)


def test_halving_detects_a_wrong_family(monkeypatch):
    # corrupt H_n so the right side drifts far outside the tail allowance
    real = ids.FamilyHandle.H
    monkeypatch.setattr(ids.FamilyHandle, "H", lambda self, n: real(self, n) + SparsePoly.constant(1))
    report = check_halving(B(2), Fraction(1, 2), 30)
    assert report.verdict == FAIL and not report.passed
    assert report.witness["location"] == {"N": 30}


@pytest.mark.parametrize("rule,n", [(B(2), 0), (B(2), 4), (B(3), 6), (ExponentRule.geometric(), 5)])
def test_finite_transform(rule, n):
    assert_pass(check_finite_transform(rule, n))


def test_parity_reflection():
    assert_pass(check_parity_reflection(ExponentRule.table(range(6)), 5))
    assert_pass(check_parity_reflection(ExponentRule.table([0, 1, 2, 3, 8, 5]), 4))
    # an odd exponent at an even index breaks the hypothesis
    assert check_parity_reflection(ExponentRule.table([0, 1, 2, 3, 9, 5]), 4).verdict == NOT_APPLICABLE
    r = check_parity_reflection(B(2), 4)
    assert r.verdict == NOT_APPLICABLE and r.passed and r.witness is None


def test_inverse_transform_small_cases():
    r = check_inverse_transform(B(2), 1, 0)
    assert_pass(r)
    assert alternating_moment_sum(B(2), 1, 0) == SparsePoly.monomial(0, -1)
    assert_pass(check_inverse_transform(B(2), 5, 0))
    assert_pass(check_inverse_transform(B(2), 5, 1))
    assert alternating_moment_sum(B(2), 5, 1) == SparsePoly([(6, -5), (10, -5)])
    with pytest.raises(ValueError):
        check_inverse_transform(B(2), 3, 2)


def test_inverse_transform_against_sympy():
    z = sympy.symbols("z")
    for n in range(0, 8):
        f = [sum(sympy.binomial(k, j) * z ** sympy.binomial(j, 2) for j in range(k + 1)) for k in range(n + 1)]
        lhs = sympy.expand(sum((-1) ** k * sympy.binomial(n, k) * k * f[k] for k in range(n + 1)))
        ours = alternating_moment_sum(B(2), n, 1)
        assert sympy.Poly(lhs, z).as_dict() == {(e,): c for e, c in ours.terms} or (lhs == 0 and not ours)


def test_span():
    for rule in (B(2), B(4), ExponentRule.geometric()):
        assert_pass(check_span(rule, 9))


def test_support_collapse():
    r0 = check_support_collapse(IDENT, 3, 0)
    assert_pass(r0)
    assert r0.detail["signed_coefficients"] == {0: [1]}
    r1 = check_support_collapse(IDENT, 3, 1)
    assert_pass(r1)
    assert r1.detail["signed_coefficients"] == {0: [0, 1], 1: [0, 1]}
    r2 = check_support_collapse(B(2), 6, 2)
    assert_pass(r2)
    assert all(len(c) <= 3 for c in r2.detail["signed_coefficients"].values())


def test_support_collapse_ambiguous_window():
    r = check_support_collapse(B(3), 2, 2)
    assert r.verdict == AMBIGUOUS_SUPPORT and r.passed


def test_interpolate_exact():
    xs = [2, 3, 5, 7]
    ys = [Fraction(x**3 - 2 * x + 1) for x in xs]
    assert interpolate(xs, ys) == [1, -2, 0, 1]


@pytest.mark.parametrize("n,nu", [(3, 0), (5, 2), (1, 0), (12, 4), (8, 8)])
def test_moment_vanishing(n, nu):
    assert_pass(check_moment_vanishing(n, nu))
    with pytest.raises(ValueError):
        check_moment_vanishing(0, 0)


def test_moment_sum_is_not_trivially_zero():
    # the first j past the vanishing range is nonzero
    assert ids.moment_sum(5, 4, 1) != 0


@pytest.mark.parametrize("rule,n,r", [(B(2), 3, 0), (B(2), 1, 1), (B(3), 4, 2), (ExponentRule.geometric(), 3, 3)])
def test_difference_identity(rule, n, r):
    assert_pass(check_difference_identity(rule, n, r))


@pytest.mark.parametrize("m,n", [(2, 2), (1, 5), (3, 7), (4, 11)])
def test_derivative_identity(m, n):
    assert_pass(check_derivative_identity(m, n))


@pytest.mark.parametrize("m,n", [(1, 3), (2, 4), (3, 5), (4, 9)])
def test_inverse_derivative(m, n):
    assert_pass(check_inverse_derivative(m, n))


@pytest.mark.parametrize("m,N", [(1, 8), (2, 10), (3, 10)])
def test_pde(m, N):
    assert_pass(check_pde(m, N))


def test_pde_first_family_matches_closed_form():
    lhs, _ = pde_sides(1, 8)
    closed = closed_form_first_family(8)
    assert closed.coeffs == tuple(f_poly(1, n) for n in range(9))
    from sparsebinom.polycore import derivative, shift
    assert lhs.coeffs == tuple(shift(derivative(c), 1) for c in closed.coeffs)


def test_failure_witness_shape():
    r = ids._compare("demo", {}, SparsePoly([(0, 1), (3, 2)]), SparsePoly([(0, 1), (3, 5)]), {"n": 4})
    assert r.verdict == FAIL and not r.passed
    assert r.witness["exponent"] == 3 and r.witness["lhs_term"] == 2 and r.witness["rhs_term"] == 5
    assert r.to_json()["pass"] is False
