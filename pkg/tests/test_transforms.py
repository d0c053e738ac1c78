import random
from fractions import Fraction

import pytest
import sympy

from models.series import LaurentSeries, ZSeries
from utils.errors import CompositionError, InputContractError, SingularityError, SizeLimitError
from utils.freeprob import boxplus, law_arcsine, law_bernoulli, law_dirac, law_from_cumulants
from utils.transforms import (
    cauchy_from_cumulants,
    compose_atomic_into_theta,
    compose_z_into_cauchy,
    cumulants_from_moments,
    h_coeffs_combinatorial,
    h_composition_residual,
    h_transform_analytic,
    h_transform_from_g,
    inf_cauchy_from_rinf,
    k_from_moments,
    markov_krein_inverse,
    moments_from_cumulants,
    rinf_from_inf_cauchy,
    subordination_add,
    theta,
)
from tests.conftest import random_sequence, taylor_coefficients

z = sympy.Symbol("z")


# -----------------------------
# K and R
# -----------------------------
def test_semicircle_cumulants(semicircle):
    assert cumulants_from_moments(semicircle.m) == (0, 1, 0, 0, 0, 0, 0, 0)
    K = k_from_moments(semicircle.m)
    assert K.pole == 1
    assert K.order == 8


def test_bernoulli_cumulants(bernoulli):
    r = cumulants_from_moments(bernoulli.m)
    assert (r[1], r[3], r[5], r[7]) == (1, -1, 2, -5)
    assert r[0] == r[2] == r[4] == r[6] == 0


def test_bernoulli_k_closed_form():
    K = k_from_moments(law_bernoulli(10).m)
    assert K.pole == 1
    # K_b(z) − 1/z = (√(1+4z²) − 1)/(2z)
    expected = taylor_coefficients((sympy.sqrt(1 + 4 * z ** 2) - 1) / (2 * z), z, 10)
    assert K.tail == expected
    assert expected[7:] == (-5, 0, 14)


def test_moment_cumulant_inverse(rng):
    m = random_sequence(rng, 7)
    assert moments_from_cumulants(cumulants_from_moments(m)) == m


def test_k_is_the_inverse_of_g(rng):
    r = random_sequence(rng, 6)
    G = cauchy_from_cumulants(r)
    composed = ZSeries.k_series(r).compose(G)
    # K(G(z)) = z
    assert composed.top == 1
    assert all(composed.coefficient(k) == 0 for k in range(0, composed.prec))


def test_compose_z_into_cauchy(semicircle):
    G = semicircle.cauchy()
    out = compose_z_into_cauchy(semicircle.r_series(), G)
    # R(G) = G for the semicircle, so K(G) = 1/G + G = z
    assert out.moments()[: out.order] == G.moments()[: out.order]
    with pytest.raises(CompositionError):
        compose_z_into_cauchy(semicircle.k_series(), G)


# -----------------------------
# H
# -----------------------------
def test_h_of_semicircle(semicircle):
    assert h_coeffs_combinatorial(semicircle.r, 4) == (0, 1, 0, 5)


@pytest.mark.parametrize("which", ["semicircle", "marchenko_pastur", "bernoulli"])
def test_h_routes_agree(request, which):
    law = request.getfixturevalue(which).truncate(7)
    G = law.cauchy()
    analytic = h_transform_analytic(G)
    assert analytic.order == 7
    assert analytic.top == analytic.constant == analytic.coeff(0) == 0
    assert analytic.moments() == h_coeffs_combinatorial(law.r, 7)
    other = h_transform_from_g(G)
    assert other.moments() == analytic.truncate(other.order).moments()


@pytest.mark.parametrize("seed", range(50))
def test_h_routes_agree_on_random_cumulants(seed):
    r = random_sequence(random.Random(seed), 8)
    G = law_from_cumulants(r).cauchy()
    assert h_transform_analytic(G).moments() == h_coeffs_combinatorial(r, 8)


def test_h_size_limit(semicircle):
    with pytest.raises(SizeLimitError):
        h_coeffs_combinatorial((0,) * 11, 11)


def test_h_needs_a_cauchy_transform():
    with pytest.raises(InputContractError):
        h_transform_analytic(LaurentSeries.infinitesimal([1, 2, 3]))


# -----------------------------
# Markov-Krein and θ
# -----------------------------
def test_markov_krein_of_semicircle_is_arcsine(semicircle):
    mk = markov_krein_inverse(semicircle.cauchy())
    assert mk.order == 8
    assert mk.moments() == law_arcsine(8, 2).m


def test_markov_krein_fixes_dirac():
    law = law_dirac(3, 6)
    assert markov_krein_inverse(law.cauchy()).moments() == law.m


def test_theta_of_dirac_one_is_identity():
    th = theta(law_dirac(1, 6).cauchy())
    assert th.restricted
    assert th.order == 3
    assert (th.top, th.constant) == (1, 0)
    assert th.tail == (0, 0, 0, 0)


def test_theta_top_is_one_over_mean():
    th = theta(law_dirac(2, 5).cauchy())
    assert th.top == Fraction(1, 2)


def test_theta_needs_nonzero_mean(semicircle):
    with pytest.raises(SingularityError):
        theta(semicircle.cauchy())


def test_compose_atomic_into_theta():
    th = theta(law_dirac(1, 6).cauchy())
    # θ = z, so Σ w θ′/(θ − a) = 2/(z − 1)
    out = compose_atomic_into_theta([2], [1], th)
    assert out.order == 5
    assert out.tail == (2,) * 6
    with pytest.raises(InputContractError):
        compose_atomic_into_theta([1], [1], law_dirac(1, 6).cauchy())


# -----------------------------
# Subordination and infinitesimal transforms
# -----------------------------
def test_subordination_sum(semicircle, marchenko_pastur):
    N = 6
    w1, w2 = subordination_add(semicircle.m, marchenko_pastur.m, N)
    G = cauchy_from_cumulants([a + b for a, b in zip(semicircle.r[:N], marchenko_pastur.r[:N])])
    F = G.inverse()
    assert w1.order == w2.order == N - 2
    for k in range(-1, F.prec):
        assert w1.coefficient(k) + w2.coefficient(k) == F.coefficient(k) + (1 if k == -1 else 0)


def test_inf_cauchy_round_trip(rng, marchenko_pastur):
    G = marchenko_pastur.truncate(6).cauchy()
    rprime = random_sequence(rng, 6)
    G_inf = inf_cauchy_from_rinf(G, rprime)
    assert G_inf.order == 6
    assert G_inf.coeff(0) == 0
    assert rinf_from_inf_cauchy(G, G_inf).tail == rprime


def test_h_composition_residual_vanishes_for_a_shift(rng):
    r = random_sequence(rng, 6)
    c = Fraction(3, 2)
    G1 = law_from_cumulants(r).cauchy()
    G2 = law_from_cumulants((r[0] + c,) + r[1:]).cauchy()
    J = LaurentSeries.from_parts(6, 1, -c, [0] * 7)
    residual = h_composition_residual(G1, J, G2)
    assert not any(residual.coeffs)


@pytest.mark.parametrize("seed", range(20))
def test_h_composition_residual_vanishes_along_subordination(seed):
    rng = random.Random(seed)
    N = rng.randint(3, 7)
    mu = law_from_cumulants(random_sequence(rng, N))
    nu = law_from_cumulants(random_sequence(rng, N))
    w1, w2 = subordination_add(mu.m, nu.m, N)
    G = boxplus(mu, nu).cauchy()
    # G_μ∘ω_1 = G_ν∘ω_2 = G_{μ⊞ν}
    for base, omega in ((mu, w1), (nu, w2)):
        residual = h_composition_residual(base.cauchy(), omega, G)
        assert residual.order >= N - 2
        assert not any(residual.coeffs)
