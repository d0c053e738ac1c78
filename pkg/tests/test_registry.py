from fractions import Fraction

import pytest
import sympy

from models.polynomial import MonicPoly
from utils.cumulants import finite_cumulants_from_coeffs, moments
from utils.errors import InputContractError, LadderError
from utils.finconv import boxtimes_d
from utils.fluctuations import rhat_from_rinf
from utils.registry import (
    bernoulli_pair,
    get_family,
    hermite,
    laguerre,
    laguerre_inverse,
    list_family_names,
    perturbed_power,
    principal_minor_flow,
)
from tests.conftest import taylor_coefficients

z = sympy.Symbol("z")


def rhat_from_k(K):
    """−K″/(2K′) − 1/z for a closed-form K."""
    K1 = sympy.diff(K, z)
    return -sympy.diff(K1, z) / (2 * K1) - 1 / z


def test_family_names():
    assert list_family_names() == ["bernoulli", "dirac_perturbation", "hermite", "laguerre", "laguerre_inverse"]


def test_hermite_polynomials():
    assert hermite(2).coefficients() == [1, 0, Fraction(-1, 2)]
    assert finite_cumulants_from_coeffs(hermite(7)) == (0, 1, 0, 0, 0, 0, 0)
    # m_2 = 1 − 1/d
    assert moments(hermite(10), 2) == (0, Fraction(9, 10))


def test_laguerre_cumulants_are_one():
    assert finite_cumulants_from_coeffs(laguerre(6)) == (1,) * 6


def test_laguerre_inverse():
    assert boxtimes_d(laguerre(7), laguerre_inverse(7)) == MonicPoly.power(7, 1)


def test_bernoulli_pair():
    assert bernoulli_pair(2) == MonicPoly.from_roots([-1, -1, 1, 1])
    assert moments(bernoulli_pair(3), 4) == (0, 1, 0, 1)


def test_perturbed_power():
    assert perturbed_power(5, 2, [0, 3]) == MonicPoly.from_roots([2, 2, 2, 0, 3])
    with pytest.raises(InputContractError):
        perturbed_power(1, 0, [1, 2])


def test_lookup_errors():
    with pytest.raises(InputContractError):
        get_family("chebyshev")
    with pytest.raises(InputContractError):
        get_family("hermite", alpha=1)


def test_inadmissible_degree():
    f = get_family("bernoulli")
    assert f(6) == bernoulli_pair(3)
    with pytest.raises(LadderError):
        f(5)


def test_known_fluctuations():
    assert get_family("bernoulli").meta(6).fluct.rhat == (0, 1, 0, -5, 0, 22)
    assert get_family("laguerre_inverse").meta(7).fluct.rhat == (0, -1, 6, -29, 130, -562, 2380)
    assert get_family("hermite").meta(6).fluct.rhat == (0,) * 6
    assert get_family("hermite").meta(4).inf.mprime == (0, -1, 0, -5)


@pytest.mark.parametrize("name,K", [
    ("bernoulli", (1 + sympy.sqrt(1 + 4 * z ** 2)) / (2 * z)),
    ("laguerre_inverse", (1 + sympy.sqrt(1 + 4 * z)) / (2 * z)),
])
def test_zero_inf_families_match_closed_form_k(name, K):
    meta = get_family(name).meta(8)
    expected = taylor_coefficients(rhat_from_k(K), z, 8)
    assert meta.fluct.rhat == expected
    assert rhat_from_rinf(meta.law, (0,) * 8) == expected
    assert meta.inf.rprime == (0,) * 8


def test_dirac_perturbation_meta():
    f = get_family("dirac_perturbation", alpha=0, atoms=["1", "-1"])
    meta = f.meta(4)
    assert meta.law.m == (0, 0, 0, 0)
    assert meta.inf.mprime == (0, 2, 0, 2)
    assert meta.fluct.rhat == (0, 2, 0, 2)
    assert f.label() == "dirac_perturbation(alpha=0, atoms=1,-1)"


def test_principal_minor_flow():
    flow = principal_minor_flow(get_family("hermite"), 2)
    assert flow(6).d == 4
    assert flow.label() == "hermite minor s=2"
    with pytest.raises(LadderError):
        flow(2)
    with pytest.raises(InputContractError):
        principal_minor_flow(get_family("hermite"), -1)
