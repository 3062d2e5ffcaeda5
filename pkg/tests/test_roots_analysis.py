import math

import numpy as np
import pytest

from sparsebinom.family import f_poly
from sparsebinom.polycore import SparsePoly
from sparsebinom.roots.analysis import (
    EVIDENCE,
    FAIL,
    PASS,
    RECORDED,
    REFUTED,
    SKIPPED,
    ScanRow,
    _row_verdict,
    all_roots,
    binomial_parity,
    both_odd_positions,
    certify_annulus,
    conjecture45_46_scan,
    detect_eventual_period,
    detect_period,
    expected_parity_period,
    exponent_growth_failures,
    heuristic_predictions,
    heuristic_roots,
    parity_report,
    parity_word,
    random_family_reports,
    random_lower_family,
    random_upper_family,
    real_roots,
    roots_left_of_minus_one,
    sign_at_minus_one,
)

# f_{m,n}(-1), exact, computed independently with sympy
MINUS_ONE = {
    3: [1, 2, 4, 6, 8, 12, 24, 56, 128, 272, 544, 1056, 2048, 4032, 8064, 16256],
    2: [1, 2, 2, 0, -4, -8, -8, 0, 16, 32, 32, 0, -64, -128, -128, 0],
    4: [1, 2, 4, 8, 14, 20, 20, 0, -68, -232, -560, -1120, -1912, -2704, -2704, 0],
}


def test_all_roots_cubic_example():
    rep = all_roots(2, 3)
    assert rep.ok and rep.degree == 3 and len(rep.roots) == 3
    assert sorted(abs(z) for z in rep.roots) == pytest.approx([1, 2, 2], abs=1e-12)
    assert rep.lower_bound == pytest.approx(2 / 3) and rep.upper_bound == pytest.approx(1 + math.log(3))
    assert rep.all_inside_annulus and rep.vieta_sum_ok and rep.vieta_product_ok
    assert abs(sum(rep.roots)) < 1e-12
    assert rep.real_count == 1


def test_all_roots_upper_disc_only():
    rep = all_roots(3, 7)
    assert rep.ok and rep.degree == 35
    assert rep.lower_bound is None and rep.upper_bound == pytest.approx(2.5)
    assert rep.max_modulus < 2.5
    assert rep.regime == "numerical"


def test_report_serialization_and_scan_row():
    rep = all_roots(2, 5)
    data = rep.to_json()
    assert data["degree"] == 10 and len(data["roots"]) == 10 and data["pass"] is True
    row = rep.scan_row()
    assert isinstance(row, ScanRow) and row.count == 2 and row.verdict == PASS
    assert set(row.to_json()) == set(ScanRow.COLUMNS) | {"verdict"}


def test_annulus_violation_is_a_failure():
    # f_{2,3} has a zero of modulus 1, outside an annulus starting at 1.5
    rep = certify_annulus(f_poly(2, 3), 1.5, None, 1e-10, 0, "demo", 2, 3, "test")
    assert not rep.all_inside_annulus and rep.verdict == FAIL


def test_sign_at_minus_one():
    for m, values in MINUS_ONE.items():
        assert [sign_at_minus_one(m, n) for n in range(16)] == values
    assert sign_at_minus_one(3, 3) == 6
    assert sign_at_minus_one(1, 2) == 0


def test_odd_m_positive_at_minus_one():
    for m in (3, 5, 7):
        assert all(sign_at_minus_one(m, n) > 0 for n in range(0, 41))


def test_binomial_parity():
    assert binomial_parity(5, 3) == 0
    assert binomial_parity(7, 3) == 1 and binomial_parity(6, 3) == 0
    for n in range(0, 70):
        for m in range(0, n + 1):
            assert binomial_parity(n, m) == math.comb(n, m) % 2
    with pytest.raises(ValueError):
        binomial_parity(3, 5)


def test_parity_words_and_periods():
    assert "".join(map(str, parity_word(3, 3, 14))) == "100010001000"
    assert expected_parity_period(3) == 4
    assert expected_parity_period(4) == 8 and expected_parity_period(5) == 8
    rep = parity_report(3, 3, 18)
    assert rep.verdict == PASS and rep.period_detected == 4 and rep.both_odd_at == []
    assert parity_report(4, 4, 40).period_detected == 8
    assert parity_report(5, 5, 40).period_detected == 8


def test_never_both_odd_for_odd_m():
    for m in (1, 3, 5, 7, 9):
        assert both_odd_positions(m, m, 200) == []
    assert both_odd_positions(2, 2, 20)


def test_period_detection():
    assert detect_period([1, 0, 1, 0, 1, 0]) == 2
    assert detect_period([1, 2, 3]) is None
    assert detect_eventual_period([5, 3, 1, 2, 1, 2, 1, 2, 1, 2]) == (2, 2)
    # a two-term tail is too short to call a period
    assert detect_eventual_period([4, 7, 1, 1]) is None


def test_row_verdicts():
    assert _row_verdict(2, 8, 4) == PASS
    assert _row_verdict(2, 8, 3) == REFUTED
    assert _row_verdict(4, 12, 3) == EVIDENCE
    assert _row_verdict(4, 12, 4) == REFUTED
    assert _row_verdict(3, 12, 2) == RECORDED


def test_conjecture_scan_small():
    scan = conjecture45_46_scan(range(2, 5), range(2, 13))
    assert not scan.refuted and not scan.failed
    m2 = [r for r in scan.rows if r.m == 2]
    assert [r.count for r in m2] == [n // 2 for n in range(2, 13)]
    m4 = [r for r in scan.rows if r.m == 4 and r.count is not None]
    assert all(r.count <= r.n // 4 for r in m4)
    assert {p.m for p in scan.parity} == {2, 3, 4}


def test_conjecture_scan_skips_over_cap():
    scan = conjecture45_46_scan(range(5, 6), range(5, 14), degree_cap=200)
    skipped = [r for r in scan.rows if r.verdict == SKIPPED]
    assert [r.n for r in skipped] == [n for n in range(5, 14) if math.comb(n, 5) > 200] == [10, 11, 12, 13]


def test_zero_left_of_minus_one_when_degree_odd():
    for m in (3, 5):
        for n in range(m, 13):
            if math.comb(n, m) % 2 == 1:
                assert roots_left_of_minus_one(m, n) >= 1
    assert roots_left_of_minus_one(3, 7) == 1


def test_heuristics():
    (a, b) = heuristic_roots(2, 3)
    assert a.predicted == pytest.approx(-4 / 3) and a.matched_root == pytest.approx(-1) and a.gap == pytest.approx(1 / 3)
    labels = [lbl for lbl, _ in heuristic_predictions(3, 13)]
    assert labels == ["constant-linear", "minus-m-over-n", "odd-root-as-stated", "odd-root-truncation"]
    matches = {h.label: h for h in heuristic_roots(3, 13)}
    assert matches["minus-m-over-n"].predicted == pytest.approx(-3 / 13)
    assert matches["odd-root-as-stated"].predicted == pytest.approx(-((4 / 13) ** (1 / 3)))
    assert matches["constant-linear"].matched_root == pytest.approx(-0.36746189163338583, abs=1e-14)
    assert matches["odd-root-as-stated"].matched_root == pytest.approx(-0.5347731943992977, abs=1e-14)


def test_real_roots_match_solver():
    for m, n in [(2, 8), (3, 11), (4, 9)]:
        exact = real_roots(m, n)
        rep = all_roots(m, n)
        numeric = sorted(z.real for z, flag in zip(rep.roots, rep.real) if flag)
        assert numeric == pytest.approx(exact, abs=1e-9)


def test_random_families_respect_bounds():
    reports = random_family_reports(count=5, seed=11)
    assert len(reports) == 10
    assert all(r.ok for r in reports)


def test_random_family_shapes():
    rng = np.random.default_rng(0)
    p = random_upper_family(rng, 3, 19)
    assert p.degree == math.comb(19, 3) and p.leading_coefficient == 1
    q = random_lower_family(rng, 3, 10)
    assert abs(q.coeff(0)) >= math.comb(11, 2)
    exps = [e for e, _ in q.terms]
    assert exps[0] == 0


def test_exponent_growth():
    assert exponent_growth_failures() == []


def test_linear_root_report():
    rep = certify_annulus(SparsePoly.from_dense([3, 1]), None, None, 1e-10, 0, "lin", None, None, "")
    assert rep.roots == [-3] and rep.ok
