"""
Analytic transforms between moment sequences and truncated series.

Every function here works on LaurentSeries (G, F, H, ω, θ) and ZSeries
(R, K, R^inf) and returns a series whose order reflects what the inputs
actually determine. Orders quoted below are for Cauchy inputs of order N.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

from models.polynomial import CumulantSeq, MomentSeq
from models.scalar import to_scalars
from models.series import LaurentSeries, ZSeries
from utils.combinat import MAX_ANNULAR_N, annular_weights
from utils.cumulants import _product
from utils.errors import CompositionError, InputContractError, SeriesOrderError, SingularityError, SizeLimitError

log = logging.getLogger(__name__)


def _require_cauchy(G: LaurentSeries, mass: int = 1) -> None:
    if not isinstance(G, LaurentSeries):
        raise InputContractError(f"expected a LaurentSeries, got {type(G).__name__}")
    if G.top != 0 or G.constant != 0 or G.coeff(0) != mass:
        raise InputContractError(f"expected a Cauchy transform with total mass {mass}")


def _lagrange(phi: ZSeries, count: int) -> List[Fraction]:
    """[x^n] of the solution u = x·φ(u), for n = 1..count."""
    out: List[Fraction] = []
    power = None
    for n in range(1, count + 1):
        power = phi if power is None else power * phi
        out.append(power.coefficient(n - 1) / n)
    return out


# -----------------------------
# Moments <-> K and R
# -----------------------------
def compose_z_into_cauchy(r: ZSeries, G: LaurentSeries) -> LaurentSeries:
    """r(G(z)) for a pole-free r; order N − 2 when r and G have order N.

    The result has no constant term when r_1 = 0.
    """
    if r.pole != 0:
        raise CompositionError("compose_z_into_cauchy needs a series without a 1/z term")
    if r.order != G.order:
        raise SeriesOrderError(f"order mismatch: {r.order} and {G.order}")
    return r.compose(G)


def k_from_moments(m: Sequence) -> ZSeries:
    """K = G^{<−1>} with G = Σ m_n z^{−n−1}; order len(m).

    With t = 1/z, G = t·M(t), so t = G·φ(t) for φ = 1/M and Lagrange
    inversion gives t as a power series in G; K is its reciprocal.
    """
    m = to_scalars(m)
    N = len(m)
    if N < 1:
        raise InputContractError("k_from_moments needs at least one moment")
    phi = ZSeries(0, (Fraction(1),) + m).inverse()
    t = ZSeries(1, tuple(_lagrange(phi, N + 1)))
    return t.inverse()


def cumulants_from_moments(m: Sequence) -> CumulantSeq:
    """r_1..r_N by the series route."""
    return k_from_moments(m).tail


def moments_from_k(K: ZSeries) -> MomentSeq:
    """m_1..m_N from K = 1/z + Σ r_n z^{n−1} of order N.

    G solves G = w(1 + Σ r_n G^n) with w = 1/z, so m_n is the w^{n+1}
    coefficient of the Lagrange inverse of ψ(u) = 1 + Σ r_n u^n.
    """
    if K.pole != 1:
        raise InputContractError(f"K must have a simple pole with residue 1, got {K.pole}")
    N = K.order
    psi = ZSeries(0, (Fraction(1),) + K.tail)
    coeffs = _lagrange(psi, N + 1)
    return tuple(coeffs[1:])


def moments_from_cumulants(r: Sequence) -> MomentSeq:
    """m_1..m_N by the series route."""
    return moments_from_k(ZSeries.k_series(r))


def cauchy_from_cumulants(r: Sequence) -> LaurentSeries:
    return LaurentSeries.cauchy(moments_from_cumulants(r))


# -----------------------------
# H-transform
# -----------------------------
def reciprocal(G: LaurentSeries) -> LaurentSeries:
    """F = 1/G; order N − 2."""
    return G.inverse()


def h_transform_analytic(G: LaurentSeries) -> LaurentSeries:
    """H = −F″/(2F′) with F = 1/G; keeps order N."""
    _require_cauchy(G)
    F = reciprocal(G)
    F1 = F.derivative()
    F2 = F1.derivative()
    return -(F2 / F1) / 2


def h_transform_from_g(G: LaurentSeries) -> LaurentSeries:
    """H = G′/G − G″/(2G′), the same series by a second route."""
    _require_cauchy(G)
    G1 = G.derivative()
    G2 = G1.derivative()
    first = G1 / G
    second = (G2 / G1) / 2
    order = min(first.order, second.order)
    return first.truncate(order) - second.truncate(order)


def h_coeffs_combinatorial(r: Sequence, N: int) -> MomentSeq:
    """h_1..h_N with h_n = (n/2) Σ_{t+s=n} Σ_{σ∈S_NC(t,s)} r_σ/(ts); h_1 = 0."""
    r = to_scalars(r)
    if N > MAX_ANNULAR_N:
        raise SizeLimitError(f"annular sums are limited to n <= {MAX_ANNULAR_N}, got {N}")
    if len(r) < N:
        raise InputContractError(f"Need {N} cumulants, got {len(r)}")
    out = [Fraction(0)]
    for n in range(2, N + 1):
        total = sum((w * _product(r, lam) for lam, w in annular_weights(n).items()), Fraction(0))
        out.append(Fraction(n, 2) * total)
    return tuple(out)


def markov_krein_inverse(G: LaurentSeries) -> LaurentSeries:
    """−G′/G; keeps order N and maps δ_α to itself."""
    _require_cauchy(G)
    return -(G.derivative() / G)


# -----------------------------
# θ and its rational compositions
# -----------------------------
def theta(G: LaurentSeries) -> LaurentSeries:
    """θ = G/(G − 1/z), flagged restricted; order N − 3 with top 1/m_1."""
    _require_cauchy(G)
    if G.order < 1 or G.coeff(1) == 0:
        raise SingularityError("θ needs a law with non-zero mean")
    one_over_z = LaurentSeries._build(G.start, G.prec, lambda k: Fraction(1) if k == 1 else Fraction(0))
    out = G / (G - one_over_z)
    return LaurentSeries(out.start, out.coeffs, restricted=True)


def compose_atomic_into_theta(weights: Sequence, atoms: Sequence, th: LaurentSeries) -> LaurentSeries:
    """(G_ν′∘θ)·θ′ for ν′ = Σ w_k δ_{a_k}, i.e. Σ w_k θ′/(θ − a_k); order N − 1."""
    weights, atoms = to_scalars(weights), to_scalars(atoms)
    if len(weights) != len(atoms):
        raise InputContractError("weights and atoms must have the same length")
    if not th.restricted:
        raise InputContractError("expected θ as produced by theta()")
    d_theta = th.derivative()
    result = None
    for w, a in zip(weights, atoms):
        if w == 0:
            continue
        term = d_theta / (th - a) * w
        result = term if result is None else result._plus(term)
    if result is None:
        return LaurentSeries.zero(th.order + 2)
    return result


# -----------------------------
# Subordination and infinitesimal Cauchy transforms
# -----------------------------
def subordination_add(mu: Sequence, nu: Sequence, N: int) -> Tuple[LaurentSeries, LaurentSeries]:
    """ω_1 = K_μ∘G_{μ⊞ν} and ω_2 = K_ν∘G_{μ⊞ν}; order N − 2."""
    mu, nu = to_scalars(mu), to_scalars(nu)
    if N > MAX_ANNULAR_N:
        raise SizeLimitError(f"subordination is limited to N <= {MAX_ANNULAR_N}, got {N}")
    if min(len(mu), len(nu)) < N:
        raise InputContractError(f"Need {N} moments of each law")
    K_mu, K_nu = k_from_moments(mu[:N]), k_from_moments(nu[:N])
    G = cauchy_from_cumulants([a + b for a, b in zip(K_mu.tail, K_nu.tail)])
    log.debug("subordination at order %d", N)
    return K_mu.compose(G), K_nu.compose(G)


def inf_cauchy_from_rinf(G: LaurentSeries, rprime: Sequence) -> LaurentSeries:
    """G_μ′ = −(R^inf∘G_μ)·G′_μ; keeps order N."""
    _require_cauchy(G)
    rprime = to_scalars(rprime)
    R = ZSeries.r_series(rprime[: G.order])
    if R.order != G.order:
        raise SeriesOrderError(f"need {G.order} infinitesimal cumulants, got {len(rprime)}")
    return -(R.compose(G) * G.derivative())


def rinf_from_inf_cauchy(G: LaurentSeries, G_inf: LaurentSeries) -> ZSeries:
    """R^inf = (−G_μ′/G′_μ)∘K_μ, inverting inf_cauchy_from_rinf; order N."""
    _require_cauchy(G)
    _require_cauchy(G_inf, mass=0)
    if G_inf.order != G.order:
        raise SeriesOrderError(f"order mismatch: {G.order} and {G_inf.order}")
    quotient = -(G_inf / G.derivative())
    return quotient.compose(k_from_moments(G.moments()))


def h_composition_residual(G1: LaurentSeries, J: LaurentSeries, G2: LaurentSeries) -> LaurentSeries:
    """(H_1∘J)·J′ − H_2 − J″/(2J′), which vanishes whenever G_1∘J = G_2."""
    H1, H2 = h_transform_analytic(G1), h_transform_analytic(G2)
    J1 = J.derivative()
    left = H1.compose(J) * J1
    correction = (J1.derivative() / J1) / 2
    order = min(left.order, H2.order, correction.order)
    return left.truncate(order) - H2.truncate(order) - correction.truncate(order)
