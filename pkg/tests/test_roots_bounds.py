import math

import pytest

from sparsebinom.roots.bounds import (
    OutOfRegime,
    epsilon_threshold,
    epsilon_threshold_ok,
    exponent_growth_ok,
    icbrt_ceil,
    in_lower_regime,
    lower_bound,
    lower_regime_start,
    upper_bound,
    upper_regime_label,
)


def test_upper_bound_examples():
    assert upper_bound(3, 7) == pytest.approx(2.5, abs=1e-15)
    assert upper_bound(2, 3) == pytest.approx(1 + math.log(3), abs=1e-15)
    assert upper_bound(4, 12) == pytest.approx(1.375, abs=1e-15)


def test_upper_bound_out_of_regime():
    with pytest.raises(OutOfRegime):
        upper_bound(3, 6)
    with pytest.raises(OutOfRegime):
        upper_bound(2, 2)


def test_lower_bound_examples():
    assert lower_bound(3, 13) == pytest.approx(3 / 11, abs=1e-15)
    assert lower_bound(2, 3) == pytest.approx(2 / 3, abs=1e-15)
    with pytest.raises(OutOfRegime):
        lower_bound(3, 8)
    assert lower_bound(3, 9) == pytest.approx(3 / 7)


@pytest.mark.parametrize("m", range(3, 12))
def test_lower_regime_threshold_is_exact_ceiling(m):
    # compare against a high-precision float evaluation of 2^(1/3) m^(4/3) + m
    from mpmath import mp, mpf, cbrt, ceil, nint
    with mp.workprec(200):
        x = cbrt(2) * mpf(m) ** (mpf(4) / 3) + m
        # m = 4 gives exactly 12, which floating point may overshoot
        expected = int(nint(x)) if abs(x - nint(x)) < mpf(2) ** -150 else int(ceil(x))
    assert lower_regime_start(m) == expected
    assert not in_lower_regime(m, expected - 1) and in_lower_regime(m, expected)


def test_lower_regime_start_m3():
    assert lower_regime_start(3) == 9


def test_icbrt_ceil():
    for x in range(0, 2000):
        r = icbrt_ceil(x)
        assert r**3 >= x and (r == 0 or (r - 1) ** 3 < x)


def test_epsilon_threshold_examples():
    # g_3(19) sits below the disc excess 3!/(19-3) = 0.375, itself below 2/5
    assert epsilon_threshold(3, 19) <= 6 / 16 <= 2 / 5
    assert epsilon_threshold_ok(3, 19)
    assert epsilon_threshold_ok(4, 12)
    assert epsilon_threshold(6, 13) <= 2 / 5
    with pytest.raises(ValueError):
        epsilon_threshold(3, 3)


def test_regime_labels():
    assert upper_regime_label(2, 10) == "annulus-m2"
    assert upper_regime_label(6, 37) == "proved"
    assert upper_regime_label(6, 20) == "numerical"
    assert upper_regime_label(3, 19) == "numerical"


def test_exponent_growth():
    for m in range(3, 9):
        for j in range(2, 51):
            assert exponent_growth_ok(m, j)
    assert math.comb(3 + 2 - 1, 3) == 4 >= 4 * 1
