from fractions import Fraction

import pytest

from models.series import LaurentSeries, ZSeries
from utils.errors import CompositionError, InputContractError, NonInvertibleError, SeriesOrderError
from utils.transforms import theta


def test_cauchy_layout():
    G = LaurentSeries.cauchy([0, 1, 0, 2])
    assert G.order == 4
    assert (G.top, G.constant) == (0, 0)
    assert G.tail == (1, 0, 1, 0, 2)
    assert G.moments() == (0, 1, 0, 2)
    assert G.is_cauchy()


def test_k_series_layout():
    K = ZSeries.k_series([0, 1, 0])
    assert K.order == 3
    assert K.pole == 1
    assert K.tail == (0, 1, 0)


def test_coefficient_beyond_prefix():
    G = LaurentSeries.cauchy([0, 1])
    with pytest.raises(SeriesOrderError):
        G.coeff(3)


def test_inverse_times_self_is_one():
    G = LaurentSeries.cauchy([Fraction(1, 2), 3, -1, 2])
    product = G * G.inverse()
    assert product.coefficient(0) == 1
    assert all(product.coefficient(k) == 0 for k in range(1, product.prec))
    assert product.order == G.order - 1


def test_inverse_of_unknown_series():
    with pytest.raises(NonInvertibleError):
        LaurentSeries.zero(3).inverse()


def test_addition_needs_equal_orders():
    a = LaurentSeries.cauchy([0, 1, 0])
    b = LaurentSeries.cauchy([0, 1])
    with pytest.raises(SeriesOrderError):
        a + b
    assert (a.truncate(2) - b).tail == (0, 0, 0)
    with pytest.raises(InputContractError):
        a + ZSeries.r_series([1, 2, 3])


def test_truncate_cannot_raise_order():
    with pytest.raises(SeriesOrderError):
        LaurentSeries.cauchy([0, 1]).truncate(3)


def test_derivative_orders():
    G = LaurentSeries.cauchy([1, 1, 1])
    assert G.derivative().order == G.order + 1
    # d/dz z^{-1} = −z^{-2}, d/dz z^{-2} = −2 z^{-3}
    assert G.derivative().coeff(1) == -1
    assert G.derivative().coeff(2) == -2
    R = ZSeries.r_series([1, 2, 3])
    assert R.derivative().order == R.order - 1
    assert R.derivative().tail == (2, 6)


def test_scalar_arithmetic():
    R = ZSeries.r_series([1, 2])
    assert (R + 1).tail == (2, 2)
    assert (3 * R).tail == (3, 6)
    assert (R / 2).tail == (Fraction(1, 2), 1)
    assert (1 - R).tail == (0, -2)


def test_power():
    R = ZSeries.r_series([1, 1, 0, 0])
    assert (R ** 2).truncate(4).tail == (1, 2, 1, 0)


def test_scale_argument():
    R = ZSeries.r_series([1, 1, 1])
    assert R.scale_argument(2).tail == (1, 2, 4)
    G = LaurentSeries.cauchy([1, 1])
    assert G.scale_argument(2).tail == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))


def test_z_compose_z():
    # (1 + z)² ∘ (z + z²) = 1 + 2z + 3z² + ...
    outer = ZSeries.r_series([1, 2, 1, 0])
    inner = ZSeries(1, (1, 1, 0, 0))
    out = outer.compose(inner)
    assert out.coefficient(0) == 1
    assert out.coefficient(1) == 2
    assert out.coefficient(2) == 3
    assert out.coefficient(3) == 2


def test_compose_needs_small_argument():
    with pytest.raises(CompositionError):
        ZSeries.r_series([1, 1]).compose(ZSeries.r_series([1, 1]))


def test_theta_cannot_be_composed_into():
    th = theta(LaurentSeries.cauchy([1, 1, 1, 1, 1]))
    with pytest.raises(CompositionError):
        ZSeries.r_series([1, 1]).compose(th)


def test_equality_ignores_storage_start():
    a = LaurentSeries(1, (1, 0, 2))
    b = LaurentSeries(-1, (0, 0, 1, 0, 2))
    assert a == b
    assert hash(a) == hash(b)


def test_dict_round_trip():
    G = LaurentSeries.from_parts(2, 1, Fraction(-1, 3), [0, 1, 5])
    assert LaurentSeries.from_dict(G.to_dict()) == G
    K = ZSeries.from_parts(3, 1, [0, 1, 0])
    assert ZSeries.from_dict(K.to_dict()) == K
