"""
Finite free convolutions on normalized coefficients, plus the exact and
truncated cumulant expansions used as their test oracles.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Dict, Sequence

from models.partition import BlockType
from models.polynomial import MonicPoly
from models.scalar import to_scalar, to_scalars
from utils.combinat import annular_kreweras_weights, annular_weights, kreweras_type_pairs, nc_type_counts, partition_pair_table
from utils.cumulants import MAX_DOUBLE_SUM_N, _mobius_from_bottom, _product
from utils.errors import DegreeMismatchError, InputContractError, RouteMismatchError, SizeLimitError, TruncationError


def _same_degree(p: MonicPoly, q: MonicPoly) -> None:
    if p.d != q.d:
        raise DegreeMismatchError(f"Finite free convolution needs equal degrees, got {p.d} and {q.d}")


def boxplus_d(p: MonicPoly, q: MonicPoly) -> MonicPoly:
    """p ⊞_d q: ã_k = Σ_i binom(k, i) ã_i(p) ã_{k−i}(q)."""
    _same_degree(p, q)
    a, b = p.atilde, q.atilde
    return MonicPoly(p.d, tuple(
        sum((comb(k, i) * a[i] * b[k - i] for i in range(k + 1)), Fraction(0))
        for k in range(p.d + 1)
    ))


def boxtimes_d(p: MonicPoly, q: MonicPoly) -> MonicPoly:
    """p ⊠_d q: ã_k = ã_k(p) ã_k(q)."""
    _same_degree(p, q)
    return MonicPoly(p.d, tuple(x * y for x, y in zip(p.atilde, q.atilde)))


def kappa_product_expansion(d: int, kappa_p: Sequence, kappa_q: Sequence, n: int) -> Fraction:
    """κ_n(p ⊠_d q) from the cumulants of p and q alone.

    (−1)^{n−1}/(n−1)! Σ_{π∨θ=1_n} d^{|π|+|θ|−n−1} Möb(0,π) Möb(0,θ) κ_π(p) κ_θ(q)
    """
    kappa_p, kappa_q = to_scalars(kappa_p), to_scalars(kappa_q)
    if n > d:
        raise TruncationError(f"Order {n} exceeds degree {d}")
    if n > MAX_DOUBLE_SUM_N:
        raise SizeLimitError(f"kappa_product_expansion is limited to n <= {MAX_DOUBLE_SUM_N}, got {n}")
    if min(len(kappa_p), len(kappa_q)) < n:
        raise TruncationError(f"Need {n} cumulants of each polynomial")
    total = Fraction(0)
    for (lam, tau), count in partition_pair_table(n).items():
        total += count * Fraction(d) ** (len(lam) + len(tau) - n - 1) \
            * _mobius_from_bottom(lam) * _mobius_from_bottom(tau) \
            * _product(kappa_p, lam) * _product(kappa_q, tau)
    return Fraction((-1) ** (n - 1), factorial(n - 1)) * total


# -----------------------------
# Truncated 1/d expansions
# -----------------------------
def _annular_sum(weights: Dict[BlockType, Fraction], values: Sequence[Fraction]) -> Fraction:
    return sum((w * _product(values, key) for key, w in weights.items()), Fraction(0))


def finite_moment_expansion(kappa: Sequence, d: int, n: int) -> Fraction:
    """m_n ≈ Σ_{NC(n)} κ_π − (n/2d) Σ_{t+s=n} Σ_{S_NC(t,s)} κ_σ/(ts), exact up to O(1/d²)."""
    kappa = to_scalars(kappa)
    leading = sum((c * _product(kappa, lam) for lam, c in nc_type_counts(n).items()), Fraction(0))
    if n == 1:
        return leading
    return leading - Fraction(n, 2 * d) * _annular_sum(annular_weights(n), kappa)


def truncated_product_expansion(d: int, kappa_p: Sequence, kappa_q: Sequence, n: int) -> Fraction:
    """κ_n(p⊠q) ≈ Σ_{NC(n)} κ_π(p) κ_{Kr π}(q) − (n/2d) Σ κ_σ(p) κ_{Kr_{t,s}σ}(q)/(ts)."""
    kappa_p, kappa_q = to_scalars(kappa_p), to_scalars(kappa_q)
    leading = sum(
        (c * _product(kappa_p, a) * _product(kappa_q, b) for (a, b), c in kreweras_type_pairs(n).items()),
        Fraction(0),
    )
    if n == 1:
        return leading
    annular = sum(
        (w * _product(kappa_p, a) * _product(kappa_q, b) for (a, b), w in annular_kreweras_weights(n).items()),
        Fraction(0),
    )
    return leading - Fraction(n, 2 * d) * annular


# -----------------------------
# Differentiation, dilation, translation
# -----------------------------
def _derivative_direct(p: MonicPoly, s: int) -> MonicPoly:
    # p^{(s)}/(d)_s keeps ã_0..ã_{d−s}
    return MonicPoly(p.d - s, p.atilde[: p.d - s + 1])


def _derivative_via_boxtimes(p: MonicPoly, s: int) -> MonicPoly:
    d = p.d
    q = MonicPoly.from_roots([0] * s + [1] * (d - s))
    product = boxtimes_d(p, q)
    # product = x^s r(x); strip the factor and renormalize for degree d − s
    coeffs = product.coefficients()
    if any(coeffs[d - s + 1:]):
        raise RouteMismatchError("⊠ with x^s(x−1)^{d−s} did not produce a factor x^s")
    return MonicPoly.from_coefficients(coeffs[: d - s + 1])


def derivative_poly(p: MonicPoly, s: int, check: bool = True) -> MonicPoly:
    """p^{(s)}/(d)_s, monic of degree d − s."""
    if s < 0 or s >= p.d:
        raise InputContractError(f"Need 0 <= s < d, got s={s}, d={p.d}")
    if s == 0:
        return p
    direct = _derivative_direct(p, s)
    if check:
        other = _derivative_via_boxtimes(p, s)
        if other != direct:
            raise RouteMismatchError(f"derivative routes disagree for s={s}")
    return direct


def dilate(p: MonicPoly, t) -> MonicPoly:
    """Roots scaled by t."""
    t = to_scalar(t)
    if t == 0:
        raise InputContractError("Dilation factor must be non-zero")
    return MonicPoly(p.d, tuple(t ** k * a for k, a in enumerate(p.atilde)))


def shift(p: MonicPoly, c) -> MonicPoly:
    """Roots shifted by c, i.e. p ⊞_d (x − c)^d."""
    return boxplus_d(p, MonicPoly.power(p.d, to_scalar(c)))
