"""
Moments and finite free cumulants of a MonicPoly, in every direction.

The finite free cumulant of order n is a rescaled classical cumulant of
the sequence ã: κ_n = (−d)^{n−1}/(n−1)! · Σ_{π∈P(n)} Möb(π, 1_n) ã_π.
The partition sum is evaluated literally ("partitions"); the
exponential-generating-function recursion ("recursive") gives the same
numbers and has no size limit, which is what degree ladders need.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Sequence, Tuple

from models.partition import BlockType
from models.polynomial import CumulantSeq, MomentSeq, MonicPoly
from models.scalar import to_scalars
from utils.combinat import MAX_PARTITION_N, partition_pair_table, partition_type_counts
from utils.errors import InputContractError, SizeLimitError, TruncationError

log = logging.getLogger(__name__)

MAX_DOUBLE_SUM_N = 8
METHODS = ("partitions", "recursive")


def _product(values: Sequence[Fraction], block_type: BlockType) -> Fraction:
    out = Fraction(1)
    for k in block_type:
        out *= values[k - 1]
    return out


def _mobius_from_bottom(block_type: BlockType) -> int:
    """Möb_P(0_n, π) for π of the given type."""
    out = 1
    for k in block_type:
        out *= (-1) ** (k - 1) * factorial(k - 1)
    return out


# -----------------------------
# Moments
# -----------------------------
def moments(p: MonicPoly, N: int) -> MomentSeq:
    """m_1..m_N of the root distribution, via Newton's identities."""
    if N < 1:
        raise InputContractError(f"Need at least one moment, got N={N}")
    power_sums: List[Fraction] = []
    for k in range(1, N + 1):
        total = (-1) ** (k - 1) * k * p.elementary(k)
        for i in range(1, k):
            e = p.elementary(i)
            if e:
                total += (-1) ** (i - 1) * e * power_sums[k - i - 1]
        power_sums.append(total)
    return tuple(ps / p.d for ps in power_sums)


# -----------------------------
# Classical cumulants of the ã sequence
# -----------------------------
def _classical_cumulants(a: Sequence[Fraction], N: int) -> List[Fraction]:
    # a[0] = 1; c_n = a_n − Σ_{k<n} binom(n−1, k−1) c_k a_{n−k}
    c: List[Fraction] = []
    for n in range(1, N + 1):
        total = a[n]
        for k in range(1, n):
            if c[k - 1] and a[n - k]:
                total -= comb(n - 1, k - 1) * c[k - 1] * a[n - k]
        c.append(total)
    return c


def _classical_cumulants_by_partitions(a: Sequence[Fraction], N: int) -> List[Fraction]:
    if N > MAX_PARTITION_N:
        raise SizeLimitError(f"partition route is limited to N <= {MAX_PARTITION_N}, got {N}")
    out = []
    for n in range(1, N + 1):
        total = Fraction(0)
        for lam, count in partition_type_counts(n).items():
            blocks = len(lam)
            # Möb(π, 1_n) depends only on |π|
            total += count * (-1) ** (blocks - 1) * factorial(blocks - 1) * _product(a[1:], lam)
        out.append(total)
    return out


def finite_cumulants_from_coeffs(p: MonicPoly, N: int = None, method: str = "partitions") -> CumulantSeq:
    """κ_1..κ_N of p (N defaults to d)."""
    N = p.d if N is None else N
    if N > p.d:
        raise TruncationError(f"Finite cumulants of a degree-{p.d} polynomial stop at order {p.d}, asked for {N}")
    if method == "partitions":
        c = _classical_cumulants_by_partitions(p.atilde, N)
    elif method == "recursive":
        c = _classical_cumulants(p.atilde, N)
    else:
        raise InputContractError(f"Unknown method {method!r}; expected one of {METHODS}")
    return tuple(Fraction((-p.d) ** (n - 1), factorial(n - 1)) * c[n - 1] for n in range(1, N + 1))


def poly_from_finite_cumulants(d: int, kappa: Sequence) -> MonicPoly:
    """The degree-d MonicPoly whose finite cumulants are κ_1..κ_d."""
    kappa = to_scalars(kappa)
    if len(kappa) != d:
        raise InputContractError(f"Degree {d} needs exactly {d} cumulants, got {len(kappa)}")
    c = [k * Fraction(factorial(n - 1), (-d) ** (n - 1)) for n, k in enumerate(kappa, start=1)]
    support = [k for k in range(1, d + 1) if c[k - 1]]
    a = [Fraction(1)]
    for n in range(1, d + 1):
        total = Fraction(0)
        for k in support:
            if k > n:
                break
            total += comb(n - 1, k - 1) * c[k - 1] * a[n - k]
        a.append(total)
    return MonicPoly(d, tuple(a))


# -----------------------------
# Moments <-> finite cumulants at fixed d
# -----------------------------
def _check_double_sum(N: int, d: int) -> None:
    if N > d:
        raise TruncationError(f"Order {N} exceeds degree {d}")
    if N > MAX_DOUBLE_SUM_N:
        raise SizeLimitError(f"double partition sums are limited to n <= {MAX_DOUBLE_SUM_N}, got {N}")


def _double_sum_terms(n: int, d: int) -> Dict[BlockType, Fraction]:
    """Weight of κ_π (grouped by the type of π) in the expansion of m_n."""
    weights: Dict[BlockType, Fraction] = {}
    prefactor = Fraction((-1) ** (n - 1), factorial(n - 1))
    for (lam, tau), count in partition_pair_table(n).items():
        w = prefactor * count * Fraction(d) ** (len(lam) + len(tau) - n - 1) \
            * _mobius_from_bottom(lam) * _mobius_from_bottom(tau)
        weights[lam] = weights.get(lam, Fraction(0)) + w
    return weights


def moments_from_finite_cumulants(kappa: Sequence, d: int, N: int) -> MomentSeq:
    """m_n = (−1)^{n−1}/(n−1)! Σ_{π∨θ=1_n} d^{|π|+|θ|−n−1} Möb(0,π) Möb(0,θ) κ_π."""
    kappa = to_scalars(kappa)
    _check_double_sum(N, d)
    return tuple(
        sum((w * _product(kappa, lam) for lam, w in _double_sum_terms(n, d).items()), Fraction(0))
        for n in range(1, N + 1)
    )


def finite_cumulants_from_moments(m: Sequence, d: int, N: int) -> CumulantSeq:
    """Invert moments_from_finite_cumulants one order at a time.

    κ_n enters m_n only through π = 1_n, with weight (d)_n/d^n.
    """
    m = to_scalars(m)
    _check_double_sum(N, d)
    if len(m) < N:
        raise TruncationError(f"Need {N} moments, got {len(m)}")
    kappa: List[Fraction] = []
    for n in range(1, N + 1):
        weights = _double_sum_terms(n, d)
        lead = weights.pop((n,))
        known = kappa + [Fraction(0)]
        rest = sum((w * _product(known, lam) for lam, w in weights.items()), Fraction(0))
        if lead == 0:
            raise TruncationError(f"Order {n} is not recoverable at degree {d}")
        kappa.append((m[n - 1] - rest) / lead)
    return tuple(kappa)
