import pytest

from sparsebinom.polycore import ONE, ZERO, SparsePoly
from sparsebinom.series import TruncatedSeries, geometric_series

Z = SparsePoly.monomial(1)


def test_construction_checks_length():
    with pytest.raises(ValueError):
        TruncatedSeries(2, (ONE,))
    with pytest.raises(ValueError):
        TruncatedSeries(-1, ())


def test_from_coeffs_pads_and_truncates():
    s = TruncatedSeries.from_coeffs([ONE, Z], order=3)
    assert s.coeffs == (ONE, Z, ZERO, ZERO)
    assert TruncatedSeries.from_coeffs([ONE, Z, ONE], order=1).coeffs == (ONE, Z)


def test_geometric_times_one_minus_t_is_one():
    one_minus_t = TruncatedSeries.tpoly([1, -1], 10)
    prod = geometric_series(10) * one_minus_t
    assert prod.order == 10
    assert prod.coeffs == (ONE,) + (ZERO,) * 10


def test_product_order_accounts_for_valuation():
    # t^2 * (series known to order 5) is known to order 7
    t2 = TruncatedSeries.tpoly([0, 0, 1], 9)
    s = geometric_series(5)
    prod = t2 * s
    assert prod.order == 7
    assert prod.coeffs[2:] == (ONE,) * 6


def test_add_sub_take_common_order():
    a = geometric_series(4)
    b = geometric_series(6)
    assert (a + b).order == 4
    assert (b - a).coeffs == (ZERO,) * 5


def test_shift_and_derivative():
    s = TruncatedSeries.from_coeffs([ONE, Z, Z * Z])
    assert s.shift_t(2).coeffs == (ZERO, ZERO, ONE, Z, Z * Z)
    d = s.derivative_t()
    assert d.order == 1 and d.coeffs == (Z, Z * Z * 2)
    with pytest.raises(ValueError):
        s.derivative_t(3)


def test_equal_up_to_reports_first_mismatch():
    a = TruncatedSeries.from_coeffs([ONE, Z, ONE])
    b = TruncatedSeries.from_coeffs([ONE, Z, Z, ONE])
    assert a.equal_up_to(b) == (False, 2)
    assert a.equal_up_to(a.truncate(1)) == (True, None)
    with pytest.raises(ValueError):
        a.truncate(5)


def test_valuation_and_map():
    s = TruncatedSeries.from_coeffs([ZERO, ZERO, Z])
    assert s.valuation() == 2
    assert TruncatedSeries.from_coeffs([ZERO]).valuation() is None
    assert s.map_coeffs(lambda c: c * 3)[2] == Z * 3
    assert s.scale(-1)[2] == Z * -1
