from fractions import Fraction

import pytest
import sympy

from models.polynomial import MonicPoly
from utils.cumulants import (
    finite_cumulants_from_coeffs,
    finite_cumulants_from_moments,
    moments,
    moments_from_finite_cumulants,
    poly_from_finite_cumulants,
)
from utils.errors import InputContractError, ParseError, SizeLimitError, TruncationError
from tests.conftest import random_poly, random_sequence

x = sympy.Symbol("x")


def sympy_poly(roots):
    return sympy.Poly(sympy.prod([x - sympy.Rational(r.numerator, r.denominator) for r in roots]), x)


def as_fractions(values):
    return [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in values]


# -----------------------------
# MonicPoly
# -----------------------------
def test_from_roots_matches_sympy(rng):
    roots = random_sequence(rng, 5)
    p = MonicPoly.from_roots(roots)
    assert p.coefficients() == as_fractions(sympy_poly(roots).all_coeffs())


def test_from_coefficients_inverts_coefficients(rng):
    p = random_poly(rng, 4)
    assert MonicPoly.from_coefficients(p.coefficients()) == p


def test_power():
    assert MonicPoly.power(3, 2).coefficients() == [1, -6, 12, -8]


def test_invalid_polynomials():
    with pytest.raises(InputContractError):
        MonicPoly(2, (1, 0))
    with pytest.raises(InputContractError):
        MonicPoly(1, (2, 0))
    with pytest.raises(InputContractError):
        MonicPoly(1, (1, 0.5))


def test_string_roots_must_be_exact():
    assert MonicPoly.from_roots(["3/2", "-1"]) == MonicPoly.from_roots([Fraction(3, 2), -1])
    for bad in ("1.5", "1e3", "inf"):
        with pytest.raises(ParseError):
            MonicPoly.from_roots([bad])


def test_str():
    assert str(MonicPoly.from_coefficients([1, 0, Fraction(-1, 2)])) == "x^2 - 1/2"


# -----------------------------
# Moments
# -----------------------------
def test_moments_are_power_sums(rng):
    roots = random_sequence(rng, 6)
    p = MonicPoly.from_roots(roots)
    expected = tuple(sum(r ** n for r in roots) / 6 for n in range(1, 9))
    assert moments(p, 8) == expected


# -----------------------------
# Finite free cumulants
# -----------------------------
def test_hermite_two():
    p = MonicPoly.from_coefficients([1, 0, Fraction(-1, 2)])
    assert finite_cumulants_from_coeffs(p) == (0, 1)


def test_powers_have_trivial_cumulants():
    assert finite_cumulants_from_coeffs(MonicPoly.power(5, 0)) == (0,) * 5
    assert finite_cumulants_from_coeffs(MonicPoly.power(5, 3)) == (3, 0, 0, 0, 0)


def test_first_cumulant_is_the_mean(rng):
    roots = random_sequence(rng, 5)
    assert finite_cumulants_from_coeffs(MonicPoly.from_roots(roots), 1) == (sum(roots) / 5,)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_methods_agree(rng, d):
    p = random_poly(rng, d)
    assert finite_cumulants_from_coeffs(p, method="partitions") == finite_cumulants_from_coeffs(p, method="recursive")


def test_poly_from_finite_cumulants(rng):
    kappa = random_sequence(rng, 6)
    p = poly_from_finite_cumulants(6, kappa)
    assert finite_cumulants_from_coeffs(p) == kappa


def test_cumulant_order_limited_by_degree(rng):
    with pytest.raises(TruncationError):
        finite_cumulants_from_coeffs(random_poly(rng, 3), 4)
    with pytest.raises(InputContractError):
        finite_cumulants_from_coeffs(random_poly(rng, 3), method="nope")


# -----------------------------
# Double partition sums
# -----------------------------
@pytest.mark.parametrize("d", [4, 6])
def test_moments_from_finite_cumulants(rng, d):
    p = random_poly(rng, d)
    kappa = finite_cumulants_from_coeffs(p)
    assert moments_from_finite_cumulants(kappa, d, d) == moments(p, d)


def test_finite_cumulants_from_moments(rng):
    p = random_poly(rng, 5)
    assert finite_cumulants_from_moments(moments(p, 5), 5, 5) == finite_cumulants_from_coeffs(p)


def test_double_sum_limits():
    with pytest.raises(TruncationError):
        moments_from_finite_cumulants((0, 1, 0), 2, 3)
    with pytest.raises(SizeLimitError):
        moments_from_finite_cumulants((0,) * 9, 12, 9)
