"""
Cumulant fluctuations r̂_n of a polynomial sequence and how they move
under ⊞_d, ⊠_d and repeated differentiation.

For a sequence with κ_n(p_d) = r_n(μ) + r̂_n/d + o(1/d), the first
order moment correction m′_n and r̂_n determine each other:

    m′_n = Σ_{π∈NC(n)} Σ_{V∈π} r̂_{|V|} r_{π∖V} − h_n(μ)

Every theorem is evaluated twice, once as a partition sum and once as
a series identity, and the two must agree exactly.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from models.law import FluctLaw, InfLaw, Law
from models.polynomial import CumulantSeq, MomentSeq
from models.scalar import to_scalar, to_scalars
from models.series import LaurentSeries, ZSeries
from utils.combinat import MAX_ANNULAR_N, annular_kreweras_weights, kreweras_type_pairs, nc_type_counts
from utils.cumulants import _product
from utils.errors import DimensionError, InputContractError, RouteMismatchError, SizeLimitError
from utils.freeprob import (
    _marked,
    boxplus,
    boxplus_B,
    boxtimes,
    inf_cumulants_from_moments,
    inf_transform,
    law_dirac,
    law_from_cumulants,
)
from utils.transforms import (
    h_coeffs_combinatorial,
    h_transform_analytic,
    k_from_moments,
    markov_krein_inverse,
    subordination_add,
)

log = logging.getLogger(__name__)

MAX_MULTIPLICATIVE_N = 8


def _check_annular(N: int, limit: int = MAX_ANNULAR_N) -> None:
    if N > limit:
        raise SizeLimitError(f"annular sums are limited to order <= {limit}, got {N}")


def _same_order(a, b) -> int:
    if a.order != b.order:
        raise DimensionError(f"order mismatch: {a.order} and {b.order}")
    return a.order


def _fluct_term(rhat: ZSeries, G: LaurentSeries) -> LaurentSeries:
    """−(R̂∘G)·G′."""
    return -(rhat.compose(G) * G.derivative())


# -----------------------------
# The dictionary r̂ <-> m′
# -----------------------------
def inf_cauchy_from_fluctuations(base: Law, rhat: Sequence) -> LaurentSeries:
    """G_μ′ = −(R̂∘G_μ)·G′_μ − H_μ; order N."""
    G = base.cauchy()
    return _fluct_term(ZSeries.r_series(to_scalars(rhat)[: base.order]), G) - h_transform_analytic(G)


def inf_moments_from_fluctuations(base: Law, rhat: Sequence, N: Optional[int] = None, check: bool = True) -> MomentSeq:
    """m′_1..m′_N from r̂ by the partition sum, checked against the series identity."""
    N = base.order if N is None else N
    _check_annular(N)
    base = base.truncate(N)
    rhat = to_scalars(rhat)[:N]
    if len(rhat) != N:
        raise DimensionError(f"need {N} cumulant fluctuations, got {len(rhat)}")
    h = h_coeffs_combinatorial(base.r, N)
    mprime = tuple(
        sum((c * _marked(rhat, base.r, lam) for lam, c in nc_type_counts(n).items()), Fraction(0)) - h[n - 1]
        for n in range(1, N + 1)
    )
    if check and inf_cauchy_from_fluctuations(base, rhat).moments() != mprime:
        raise RouteMismatchError("partition sum and −(R̂∘G)G′ − H disagree")
    return mprime


def fluctuations_from_inf_moments(base: Law, mprime: Sequence, N: Optional[int] = None) -> CumulantSeq:
    """r̂_n = Σ_{π∈NC(n)} Möb_NC(π, 1_n) Σ_{V∈π} (m′ + h)_{|V|} m_{π∖V}."""
    N = base.order if N is None else N
    _check_annular(N)
    base = base.truncate(N)
    mprime = to_scalars(mprime)[:N]
    if len(mprime) != N:
        raise DimensionError(f"need {N} infinitesimal moments, got {len(mprime)}")
    h = h_coeffs_combinatorial(base.r, N)
    return inf_cumulants_from_moments(base, [a + b for a, b in zip(mprime, h)])


def fluct_from_inf(a: InfLaw) -> FluctLaw:
    return FluctLaw(a.base, fluctuations_from_inf_moments(a.base, a.mprime))


def inf_from_fluct(f: FluctLaw) -> InfLaw:
    return inf_transform(f.base, mprime=inf_moments_from_fluctuations(f.base, f.rhat), check=False)


# -----------------------------
# r̂ <-> R^inf
# -----------------------------
def _k_correction(base: Law) -> Tuple[ZSeries, ZSeries]:
    """(−K″/(2K′) − 1/z, (H∘K)·K′), which coincide."""
    K = k_from_moments(base.m)
    K1 = K.derivative()
    N = base.order
    closed = -(K1.derivative() / K1) / 2 - ZSeries.from_parts(N, 1, [0] * N)
    via_h = h_transform_analytic(base.cauchy()).compose(K) * K1
    return closed, via_h


def rhat_from_rinf(base: Law, rprime: Sequence) -> CumulantSeq:
    """R̂ = R^inf − K″/(2K′) − 1/z = R^inf − (H∘K)·K′."""
    _check_annular(base.order)
    rprime = to_scalars(rprime)
    if len(rprime) != base.order:
        raise DimensionError(f"need {base.order} infinitesimal cumulants, got {len(rprime)}")
    closed, via_h = _k_correction(base)
    if closed.tail != via_h.tail:
        raise RouteMismatchError("−K″/(2K′) − 1/z and (H∘K)K′ disagree")
    return tuple(r + c for r, c in zip(rprime, closed.tail))


def rinf_from_rhat(base: Law, rhat: Sequence) -> CumulantSeq:
    _check_annular(base.order)
    rhat = to_scalars(rhat)
    if len(rhat) != base.order:
        raise DimensionError(f"need {base.order} cumulant fluctuations, got {len(rhat)}")
    closed, _ = _k_correction(base)
    return tuple(r - c for r, c in zip(rhat, closed.tail))


# -----------------------------
# Additive theorem
# -----------------------------
def additive_convolve_fluct(a: FluctLaw, b: FluctLaw) -> Tuple[FluctLaw, InfLaw]:
    """p ⊞_d q: base μ⊞ν, r̂ added.

    m′ is evaluated by the partition sum with r̂(p) + r̂(q) and by
    G_ρ′ = −(R̂_p∘G)G′ − (R̂_q∘G)G′ − H with G = G_{μ⊞ν}.
    """
    N = _same_order(a, b)
    _check_annular(N)
    base = boxplus(a.base, b.base)
    rhat = tuple(x + y for x, y in zip(a.rhat, b.rhat))
    mprime = inf_moments_from_fluctuations(base, rhat, check=False)
    G = base.cauchy()
    series = _fluct_term(a.rhat_series(), G) + _fluct_term(b.rhat_series(), G) - h_transform_analytic(G)
    if series.moments() != mprime:
        raise RouteMismatchError("additive theorem: partition and series routes disagree")
    return FluctLaw(base, rhat), inf_transform(base, mprime=mprime, check=False)


def finite_rank_additive(a: InfLaw, betas: Sequence) -> InfLaw:
    """(μ, μ′) ⊞_B (δ_0, r′_n = Σ_k β_k^n), cross-checked against
    G_ρ′ = G_μ′ − Σ_k β_k G′_μ/(1 − β_k G_μ)."""
    betas = to_scalars(betas)
    N = a.order
    b = inf_transform(law_dirac(0, N), rprime=[sum((x ** n for x in betas), Fraction(0)) for n in range(1, N + 1)])
    result = boxplus_B(a, b)
    G = a.base.cauchy()
    G1 = G.derivative()
    series = a.inf_cauchy()
    for beta in betas:
        series = series - (G1 / (1 - G * beta) * beta).truncate(N)
    if series.moments() != result.mprime:
        raise RouteMismatchError("finite-rank perturbation: ⊞_B and closed form disagree")
    return result


# -----------------------------
# Multiplicative theorem
# -----------------------------
def _annular_cross(left: Sequence[Fraction], right: Sequence[Fraction], n: int) -> Fraction:
    """Σ_{t+s=n} Σ_{σ∈S_NC(t,s)} left_σ right_{Kr_{t,s}σ}/(ts)."""
    return sum(
        (w * _product(left, lam) * _product(right, tau) for (lam, tau), w in annular_kreweras_weights(n).items()),
        Fraction(0),
    )


def multiplicative_rhat(a: FluctLaw, b: FluctLaw) -> CumulantSeq:
    N = _same_order(a, b)
    _check_annular(N, MAX_MULTIPLICATIVE_N)
    mu, nu = a.base, b.base
    out = []
    for n in range(1, N + 1):
        total = Fraction(0)
        for (lam, tau), c in kreweras_type_pairs(n).items():
            total += c * (_marked(a.rhat, mu.r, lam) * _product(nu.r, tau)
                          + _product(mu.r, lam) * _marked(b.rhat, nu.r, tau))
        if n > 1:
            total -= Fraction(n, 2) * _annular_cross(mu.r, nu.r, n)
        out.append(total)
    return tuple(out)


def multiplicative_mprime(a: FluctLaw, b: FluctLaw) -> MomentSeq:
    """m′(p⊠q) from m′(p), m(μ) and the cumulant data of q."""
    N = _same_order(a, b)
    _check_annular(N, MAX_MULTIPLICATIVE_N)
    mu, nu = a.base, b.base
    mprime_p = inf_moments_from_fluctuations(mu, a.rhat, check=False)
    out = []
    for n in range(1, N + 1):
        total = Fraction(0)
        for (lam, tau), c in kreweras_type_pairs(n).items():
            total += c * (_marked(mprime_p, mu.m, lam) * _product(nu.r, tau)
                          + _product(mu.m, lam) * _marked(b.rhat, nu.r, tau))
        if n > 1:
            total -= Fraction(n, 2) * _annular_cross(mu.m, nu.r, n)
        out.append(total)
    return tuple(out)


def multiplicative_convolve_fluct(a: FluctLaw, b: FluctLaw) -> Tuple[FluctLaw, InfLaw]:
    """p ⊠_d q: base μ⊠ν, r̂ by the Kreweras sums, m′ by two routes."""
    base = boxtimes(a.base, b.base)
    rhat = multiplicative_rhat(a, b)
    mprime = inf_moments_from_fluctuations(base, rhat)
    if multiplicative_mprime(a, b) != mprime:
        raise RouteMismatchError("multiplicative theorem: moment and cumulant routes disagree")
    return FluctLaw(base, rhat), inf_transform(base, mprime=mprime, check=False)


# -----------------------------
# Subordination
# -----------------------------
def subordination_identity_check(a: InfLaw, b: InfLaw, N: Optional[int] = None) -> Tuple[bool, LaurentSeries]:
    """G_ρ′ − G_γ′ − H_{μ⊞ν} − ω″_1/(2ω′_1) − ω″_2/(2ω′_2), which vanishes.

    ρ′ comes from the additive theorem applied to the fluctuations of a
    and b, γ′ from ⊞_B; γ′ is also rebuilt as (G_μ′∘ω_1)ω′_1 + (G_ν′∘ω_2)ω′_2.
    """
    N = _same_order(a, b) if N is None else N
    _check_annular(N, MAX_MULTIPLICATIVE_N)
    if N > a.order or N > b.order:
        raise DimensionError(f"order {N} exceeds the inputs")
    a = inf_transform(a.base.truncate(N), mprime=a.mprime[:N], check=False)
    b = inf_transform(b.base.truncate(N), mprime=b.mprime[:N], check=False)
    _, rho = additive_convolve_fluct(fluct_from_inf(a), fluct_from_inf(b))
    gamma = boxplus_B(a, b)
    w1, w2 = subordination_add(a.base.m, b.base.m, N)
    d1, d2 = w1.derivative(), w2.derivative()
    via_omega = a.inf_cauchy().compose(w1) * d1 + b.inf_cauchy().compose(w2) * d2
    if via_omega.truncate(N).moments() != gamma.mprime:
        raise RouteMismatchError("⊞_B and the subordination form of G_γ′ disagree")
    H = h_transform_analytic(gamma.base.cauchy())
    corrections = [(d.derivative() / d / 2).truncate(N) for d in (d1, d2)]
    residual = rho.inf_cauchy() - gamma.inf_cauchy() - H - corrections[0] - corrections[1]
    ok = not any(residual.coeffs)
    log.debug("subordination residual at order %d: %s", N, residual)
    return ok, residual


# -----------------------------
# Repeated differentiation
# -----------------------------
def repeated_differentiation_rhat(a: FluctLaw, t, alpha) -> FluctLaw:
    """ν = Dil_t μ^{⊞1/t}, with R̂_q(z) = αz R′_μ(tz) + R̂_p(tz)."""
    t, alpha = to_scalar(t), to_scalar(alpha)
    if t == 0:
        raise InputContractError("t must be non-zero")
    N = a.order
    r = tuple(t ** (n - 1) * x for n, x in enumerate(a.base.r, start=1))
    rhat = tuple(alpha * (n - 1) * t ** (n - 2) * a.base.r[n - 1] + t ** (n - 1) * a.rhat[n - 1]
                 for n in range(1, N + 1))
    return FluctLaw(law_from_cumulants(r, check=False), rhat)


def repeated_differentiation_series(G: LaurentSeries, rhat: Sequence, t, alpha) -> LaurentSeries:
    """−(α/t)(G + G′/G) − R̂_p(tG)·G′ − H for any Cauchy transform G."""
    t, alpha = to_scalar(t), to_scalar(alpha)
    if t == 0:
        raise InputContractError("t must be non-zero")
    N = G.order
    G1 = G.derivative()
    R = ZSeries.r_series(to_scalars(rhat)[:N]).scale_argument(t)
    out = (G + G1 / G) * (-alpha / t) + _fluct_term(R, G) - h_transform_analytic(G)
    return out


def repeated_differentiation(a: FluctLaw, t, alpha, N: Optional[int] = None) -> InfLaw:
    """Infinitesimal law of q = p^{(d−j)} along degrees with j/d = t + α/d + o(1/d)."""
    if N is not None and N < a.order:
        a = FluctLaw(a.base.truncate(N), a.rhat[:N])
    q = repeated_differentiation_rhat(a, t, alpha)
    series = repeated_differentiation_series(q.base.cauchy(), a.rhat, t, alpha)
    mprime = series.moments()
    if inf_moments_from_fluctuations(q.base, q.rhat) != mprime:
        raise RouteMismatchError("repeated differentiation: series and fluctuation routes disagree")
    return inf_transform(q.base, mprime=mprime, check=False)


def one_derivative(a: InfLaw) -> InfLaw:
    """t = 1, α = −1: ν′ = μ′ + μ − M(μ) with M the Markov-Krein transform."""
    G = a.base.cauchy()
    mk = markov_krein_inverse(G)
    mprime = tuple(x + y - z for x, y, z in zip(a.mprime, a.base.m, mk.moments()))
    return inf_transform(a.base, mprime=mprime, check=False)


# -----------------------------
# Principal minors
# -----------------------------
def minor_flow_tau(a: InfLaw, s: int) -> LaurentSeries:
    """G_τ = G_μ′ + s·G′_μ/G_μ, the limit of (d − s)·μ_{p^{(s)}} − d·μ."""
    if s < 0:
        raise InputContractError(f"s must be non-negative, got {s}")
    G = a.base.cauchy()
    return a.inf_cauchy() + (G.derivative() / G * s).truncate(a.order)
