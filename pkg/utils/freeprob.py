"""
Free probability on truncated moment data: laws, ⊞, ⊠, and their
infinitesimal versions ⊞_B and ⊠_B.

Every NC(n) sum is evaluated through the type tables of utils.combinat;
the summands here depend on a partition only through its block sizes
(and those of its Kreweras complement), so the tables are exact.
"""

from __future__ import annotations

import logging
from collections import Counter
from fractions import Fraction
from math import comb
from typing import Dict, Optional, Sequence, Tuple

from models.law import InfLaw, Law
from models.partition import BlockType
from models.polynomial import CumulantSeq, MomentSeq
from models.scalar import to_scalar, to_scalars
from utils.combinat import MAX_CYCLIC_N, catalan, cyclic_interval_terms, kreweras_type_pairs, nc_type_counts
from utils.cumulants import _product
from utils.errors import DimensionError, InputContractError, RouteMismatchError, SizeLimitError
from utils.transforms import cumulants_from_moments, inf_cauchy_from_rinf, moments_from_cumulants

log = logging.getLogger(__name__)

MAX_FREE_N = 10


# -----------------------------
# Internal helpers
# -----------------------------
def _nc_mobius(block_type: BlockType) -> int:
    """Möb_NC(0_n, σ) for σ of the given type."""
    value = (-1) ** (sum(block_type) - len(block_type))
    for k in block_type:
        value *= catalan(k - 1)
    return value


def _marked(marked: Sequence[Fraction], rest: Sequence[Fraction], block_type: BlockType) -> Fraction:
    """Σ_{V∈π} marked_{|V|} · rest_{π∖V} for any π of the given type."""
    total = Fraction(0)
    for k, mult in Counter(block_type).items():
        others = list(block_type)
        others.remove(k)
        total += mult * marked[k - 1] * _product(rest, others)
    return total


def _check_limit(N: int, what: str) -> None:
    if N > MAX_FREE_N:
        raise SizeLimitError(f"{what} is limited to order <= {MAX_FREE_N}, got {N}")


def _same_order(a, b) -> int:
    if a.order != b.order:
        raise DimensionError(f"order mismatch: {a.order} and {b.order}")
    return a.order


# -----------------------------
# NC moment-cumulant formula
# -----------------------------
def nc_moments_from_cumulants(r: Sequence, N: int) -> MomentSeq:
    """m_n = Σ_{π∈NC(n)} r_π."""
    r = to_scalars(r)
    return tuple(
        sum((c * _product(r, lam) for lam, c in nc_type_counts(n).items()), Fraction(0))
        for n in range(1, N + 1)
    )


def nc_cumulants_from_moments(m: Sequence, N: int) -> CumulantSeq:
    """r_n = Σ_{π∈NC(n)} m_π Möb_NC(π, 1_n), with Möb_NC(π, 1_n) = Möb_NC(0_n, Kr π)."""
    m = to_scalars(m)
    return tuple(
        sum((c * _nc_mobius(tau) * _product(m, lam) for (lam, tau), c in kreweras_type_pairs(n).items()), Fraction(0))
        for n in range(1, N + 1)
    )


def law_from_moments(m: Sequence, check: bool = True) -> Law:
    m = to_scalars(m)
    N = len(m)
    r = nc_cumulants_from_moments(m, N)
    if check and r != cumulants_from_moments(m):
        raise RouteMismatchError("NC-sum and Lagrange routes give different free cumulants")
    return Law(N, m, r)


def law_from_cumulants(r: Sequence, check: bool = True) -> Law:
    r = to_scalars(r)
    N = len(r)
    m = nc_moments_from_cumulants(r, N)
    if check and m != moments_from_cumulants(r):
        raise RouteMismatchError("NC-sum and Lagrange routes give different moments")
    return Law(N, m, r)


# -----------------------------
# Standard laws
# -----------------------------
def law_dirac(alpha, N: int) -> Law:
    alpha = to_scalar(alpha)
    return Law(N, tuple(alpha ** n for n in range(1, N + 1)), (alpha,) + (Fraction(0),) * (N - 1))


def law_semicircle(N: int, variance=1) -> Law:
    variance = to_scalar(variance)
    return law_from_cumulants([variance if n == 2 else 0 for n in range(1, N + 1)], check=False)


def law_marchenko_pastur(N: int, rate=1) -> Law:
    """Free Poisson with jump size 1: r_n = rate for every n."""
    return law_from_cumulants([to_scalar(rate)] * N, check=False)


def signed_moments(weights: Sequence, atoms: Sequence, N: int) -> MomentSeq:
    """m_n of Σ w_k δ_{a_k} for n = 1..N (weights need not sum to one)."""
    weights, atoms = to_scalars(weights), to_scalars(atoms)
    if len(weights) != len(atoms):
        raise InputContractError("weights and atoms must have the same length")
    return tuple(sum((w * a ** n for w, a in zip(weights, atoms)), Fraction(0)) for n in range(1, N + 1))


def law_from_atoms(weights: Sequence, atoms: Sequence, N: int) -> Law:
    weights = to_scalars(weights)
    if sum(weights) != 1:
        raise InputContractError(f"weights of a probability law must sum to 1, got {sum(weights)}")
    return law_from_moments(signed_moments(weights, atoms, N), check=False)


def law_bernoulli(N: int, a=1) -> Law:
    """½δ_{−a} + ½δ_a."""
    a = to_scalar(a)
    return law_from_atoms([Fraction(1, 2), Fraction(1, 2)], [-a, a], N)


def law_arcsine(N: int, a=2) -> Law:
    """Arcsine law on [−a, a]: m_{2k} = binom(2k, k)(a/2)^{2k}."""
    half = to_scalar(a) / 2
    m = [Fraction(0) if n % 2 else comb(n, n // 2) * half ** n for n in range(1, N + 1)]
    return law_from_moments(m, check=False)


# -----------------------------
# ⊞ and ⊠
# -----------------------------
def boxplus(mu: Law, nu: Law) -> Law:
    _same_order(mu, nu)
    return law_from_cumulants([a + b for a, b in zip(mu.r, nu.r)], check=False)


def boxtimes(mu: Law, nu: Law) -> Law:
    """r_n(μ⊠ν) = Σ_{π∈NC(n)} r_π(μ) r_{Kr π}(ν)."""
    N = _same_order(mu, nu)
    _check_limit(N, "boxtimes")
    r = tuple(
        sum((c * _product(mu.r, lam) * _product(nu.r, tau) for (lam, tau), c in kreweras_type_pairs(n).items()),
            Fraction(0))
        for n in range(1, N + 1)
    )
    return law_from_cumulants(r, check=False)


# -----------------------------
# Infinitesimal laws
# -----------------------------
def inf_moments_from_cumulants(base: Law, rprime: Sequence) -> MomentSeq:
    """m′_n = Σ_{π∈NC(n)} Σ_{V∈π} r′_{|V|} r_{π∖V}."""
    rprime = to_scalars(rprime)
    return tuple(
        sum((c * _marked(rprime, base.r, lam) for lam, c in nc_type_counts(n).items()), Fraction(0))
        for n in range(1, base.order + 1)
    )


def inf_cumulants_from_moments(base: Law, mprime: Sequence) -> CumulantSeq:
    """r′_n = Σ_{π∈NC(n)} Möb_NC(π, 1_n) Σ_{V∈π} m′_{|V|} m_{π∖V}."""
    mprime = to_scalars(mprime)
    return tuple(
        sum((c * _nc_mobius(tau) * _marked(mprime, base.m, lam) for (lam, tau), c in kreweras_type_pairs(n).items()),
            Fraction(0))
        for n in range(1, base.order + 1)
    )


def inf_transform(base: Law, rprime: Optional[Sequence] = None, mprime: Optional[Sequence] = None,
                  check: bool = True) -> InfLaw:
    """Complete (μ, μ′) from exactly one of r′ or m′.

    With check on, m′ is also computed as the coefficients of
    −(R^inf∘G_μ)·G′_μ and compared.
    """
    if (rprime is None) == (mprime is None):
        raise InputContractError("inf_transform needs exactly one of rprime or mprime")
    _check_limit(base.order, "inf_transform")
    if rprime is None:
        mprime = to_scalars(mprime)
        if len(mprime) != base.order:
            raise DimensionError(f"need {base.order} infinitesimal moments, got {len(mprime)}")
        rprime = inf_cumulants_from_moments(base, mprime)
    else:
        rprime = to_scalars(rprime)
        if len(rprime) != base.order:
            raise DimensionError(f"need {base.order} infinitesimal cumulants, got {len(rprime)}")
        mprime = inf_moments_from_cumulants(base, rprime)
    if check and inf_cauchy_from_rinf(base.cauchy(), rprime).moments() != tuple(mprime):
        raise RouteMismatchError("combinatorial and series routes give different infinitesimal moments")
    return InfLaw(base, mprime, rprime)


def zero_inf_law(base: Law) -> InfLaw:
    zeros = (Fraction(0),) * base.order
    return InfLaw(base, zeros, zeros)


def boxplus_B(a: InfLaw, b: InfLaw) -> InfLaw:
    _same_order(a, b)
    base = boxplus(a.base, b.base)
    return inf_transform(base, rprime=[x + y for x, y in zip(a.rprime, b.rprime)], check=False)


def _boxtimes_b_rprime(a: InfLaw, b: InfLaw) -> CumulantSeq:
    mu, nu = a.base, b.base
    out = []
    for n in range(1, a.order + 1):
        total = Fraction(0)
        for (lam, tau), c in kreweras_type_pairs(n).items():
            total += c * (_marked(a.rprime, mu.r, lam) * _product(nu.r, tau)
                          + _product(mu.r, lam) * _marked(b.rprime, nu.r, tau))
        out.append(total)
    return tuple(out)


def boxtimes_b_moments(a: InfLaw, b: InfLaw) -> MomentSeq:
    """m_n(γ′) = Σ_{π∈NC(n)} (Σ_V m′_{|V|}(μ) m_{π∖V}(μ) r_{Kr π}(ν) + Σ_{W∈Kr π} m_π(μ) r′_{|W|}(ν) r_{Kr π∖W}(ν))."""
    N = _same_order(a, b)
    _check_limit(N, "boxtimes_B")
    mu, nu = a.base, b.base
    out = []
    for n in range(1, N + 1):
        total = Fraction(0)
        for (lam, tau), c in kreweras_type_pairs(n).items():
            total += c * (_marked(a.mprime, mu.m, lam) * _product(nu.r, tau)
                          + _product(mu.m, lam) * _marked(b.rprime, nu.r, tau))
        out.append(total)
    return tuple(out)


def boxtimes_B(a: InfLaw, b: InfLaw) -> InfLaw:
    """(μ, μ′) ⊠_B (ν, ν′) by the cumulant definition, checked against the moment formula."""
    N = _same_order(a, b)
    _check_limit(N, "boxtimes_B")
    base = boxtimes(a.base, b.base)
    result = inf_transform(base, rprime=_boxtimes_b_rprime(a, b), check=False)
    if result.mprime != boxtimes_b_moments(a, b):
        raise RouteMismatchError("⊠_B cumulant and moment routes disagree")
    return result


def boxtimes_b_cyclic(a: InfLaw, b: InfLaw) -> MomentSeq:
    """m_n(γ′) = m′_n(μ) + Σ_{π∈CI(n)} m_π(μ) r′_{|π|}(ν, ν′), valid when ν = δ_1.

    CI(n) is summed with the multiplicity of its parametrization by
    nonempty subsets S ⊆ [n].
    """
    N = _same_order(a, b)
    if N > MAX_CYCLIC_N:
        raise SizeLimitError(f"cyclic interval sums are limited to order <= {MAX_CYCLIC_N}, got {N}")
    if b.base.r != law_dirac(1, N).r:
        raise InputContractError("the cyclic interval formula needs ν = δ_1")
    out = []
    for n in range(1, N + 1):
        total = a.mprime[n - 1]
        weights: Dict[Tuple[int, BlockType], int] = Counter(
            (len(subset), pi.type) for subset, pi in cyclic_interval_terms(n)
        )
        for (k, lam), c in weights.items():
            total += c * _product(a.base.m, lam) * b.rprime[k - 1]
        out.append(total)
    return tuple(out)
