"""
Named polynomial families with their known limiting data.

Usage:
    from utils.registry import get_family
    f = get_family("hermite")
    f(128)                 # MonicPoly of degree 128
    f.meta(8).inf.mprime   # predicted m′_1..m′_8
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Dict, List, Sequence

from models.family import Family, FamilyMeta, MinorFlow
from models.law import FluctLaw
from models.polynomial import MonicPoly
from models.scalar import to_scalar, to_scalars
from utils.cumulants import poly_from_finite_cumulants
from utils.errors import InputContractError
from utils.finconv import derivative_poly
from utils.fluctuations import fluct_from_inf, inf_from_fluct, minor_flow_tau
from utils.freeprob import (
    inf_transform,
    law_bernoulli,
    law_dirac,
    law_from_moments,
    law_marchenko_pastur,
    law_semicircle,
    signed_moments,
    zero_inf_law,
)

# p^{(s)} is checked against ⊠_d with x^s(x−1)^{d−s} up to this degree
MINOR_CHECK_MAX_D = 64


# -----------------------------
# Internal helpers
# -----------------------------
def _zero_fluct_meta(law_for: Callable[[int], object]) -> Callable[[int], FamilyMeta]:
    """Families whose finite cumulants equal the limiting ones at every d."""
    @lru_cache(maxsize=None)
    def meta(N: int) -> FamilyMeta:
        law = law_for(N)
        fluct = FluctLaw(law, (Fraction(0),) * N)
        return FamilyMeta(law, fluct, inf_from_fluct(fluct))
    return meta


def _zero_inf_meta(law_for: Callable[[int], object]) -> Callable[[int], FamilyMeta]:
    """Families whose moments do not depend on d."""
    @lru_cache(maxsize=None)
    def meta(N: int) -> FamilyMeta:
        inf = zero_inf_law(law_for(N))
        return FamilyMeta(inf.base, fluct_from_inf(inf), inf)
    return meta


def _falling_ratio(d: int, i: int) -> Fraction:
    """(d)_i / d^i."""
    out = Fraction(1)
    for j in range(i):
        out *= Fraction(d - j, d)
    return out


def _degree_at_least(k: int) -> Callable[[int], bool]:
    return lambda d: isinstance(d, int) and d >= k


# -----------------------------
# Polynomials
# -----------------------------
def hermite(d: int) -> MonicPoly:
    """The degree-d polynomial with finite free cumulants (0, 1, 0, ..., 0)."""
    if d < 2:
        raise InputContractError(f"hermite needs d >= 2, got {d}")
    return poly_from_finite_cumulants(d, [0, 1] + [0] * (d - 2))


def laguerre(d: int) -> MonicPoly:
    """ã_i = (d)_i/d^i, so every finite free cumulant is 1."""
    if d < 1:
        raise InputContractError(f"laguerre needs d >= 1, got {d}")
    return MonicPoly(d, tuple(_falling_ratio(d, i) for i in range(d + 1)))


def laguerre_inverse(d: int) -> MonicPoly:
    """ã_i = d^i/(d)_i, the ⊠_d inverse of laguerre(d)."""
    if d < 1:
        raise InputContractError(f"laguerre_inverse needs d >= 1, got {d}")
    return MonicPoly(d, tuple(1 / _falling_ratio(d, i) for i in range(d + 1)))


def bernoulli_pair(i: int) -> MonicPoly:
    """(x − 1)^i (x + 1)^i = (x² − 1)^i."""
    if i < 1:
        raise InputContractError(f"bernoulli_pair needs i >= 1, got {i}")
    atilde = []
    for k in range(2 * i + 1):
        if k % 2:
            atilde.append(Fraction(0))
        else:
            j = k // 2
            atilde.append(Fraction((-1) ** j * comb(i, j), comb(2 * i, k)))
    return MonicPoly(2 * i, tuple(atilde))


def perturbed_power(d: int, alpha, atoms: Sequence) -> MonicPoly:
    """(x − α)^{d−s}(x − α_1)⋯(x − α_s), built from e_k = Σ_j e_j(atoms) binom(d−s, k−j) α^{k−j}."""
    alpha, atoms = to_scalar(alpha), to_scalars(atoms)
    s = len(atoms)
    if d < s:
        raise InputContractError(f"degree {d} is below the number of perturbed roots {s}")
    e_atoms = [Fraction(1)]
    for a in atoms:
        e_atoms = [x + a * y for x, y in zip(e_atoms + [Fraction(0)], [Fraction(0)] + e_atoms)]
    atilde = []
    for k in range(d + 1):
        e = sum((e_atoms[j] * comb(d - s, k - j) * alpha ** (k - j) for j in range(min(k, s) + 1)), Fraction(0))
        atilde.append(e / comb(d, k))
    return MonicPoly(d, tuple(atilde))


# -----------------------------
# Families
# -----------------------------
def hermite_family() -> Family:
    return Family("hermite", hermite, _degree_at_least(2), _zero_fluct_meta(law_semicircle))


def laguerre_family() -> Family:
    return Family("laguerre", laguerre, _degree_at_least(1), _zero_fluct_meta(law_marchenko_pastur))


def laguerre_inverse_family() -> Family:
    def law_for(N: int):
        return law_from_moments([1] + [0] * (N - 1))
    return Family("laguerre_inverse", laguerre_inverse, _degree_at_least(1), _zero_inf_meta(law_for))


def bernoulli_family() -> Family:
    """Registered by degree d = 2i."""
    return Family(
        "bernoulli",
        lambda d: bernoulli_pair(d // 2),
        lambda d: isinstance(d, int) and d >= 2 and d % 2 == 0,
        _zero_inf_meta(law_bernoulli),
    )


def dirac_perturbation(alpha=0, atoms: Sequence = (1,)) -> Family:
    """p_d = (x − α)^{d−s}(x − α_1)⋯(x − α_s): μ = δ_α, μ′ = −sδ_α + Σ δ_{α_k}."""
    alpha, atoms = to_scalar(alpha), to_scalars(atoms)
    s = len(atoms)

    @lru_cache(maxsize=None)
    def meta(N: int) -> FamilyMeta:
        law = law_dirac(alpha, N)
        mprime = signed_moments([-s] + [1] * s, [alpha] + list(atoms), N)
        rhat = tuple(sum(((a - alpha) ** n for a in atoms), Fraction(0)) for n in range(1, N + 1))
        return FamilyMeta(law, FluctLaw(law, rhat), inf_transform(law, mprime=mprime, check=False))

    params = {"alpha": str(alpha), "atoms": ",".join(str(a) for a in atoms)}
    return Family("dirac_perturbation", lambda d: perturbed_power(d, alpha, atoms), _degree_at_least(max(s, 1)),
                  meta, params)


def principal_minor_flow(family: Family, s: int) -> MinorFlow:
    """d ↦ p_d^{(s)}/(d)_s; τ = lim (d − s)μ_{p^{(s)}} − dμ has G_τ = G_μ′ + s G′_μ/G_μ."""
    if s < 0:
        raise InputContractError(f"s must be non-negative, got {s}")

    def generator(d: int) -> MonicPoly:
        return derivative_poly(family(d), s, check=d <= MINOR_CHECK_MAX_D) if s else family(d)

    def tau(N: int):
        inf = family.meta(N).inf
        if inf is None:
            raise InputContractError(f"family {family.name} has no known infinitesimal law")
        return minor_flow_tau(inf, s)

    return MinorFlow(family, s, generator, tau)


_BUILDERS: Dict[str, Callable[..., Family]] = {
    "hermite": hermite_family,
    "laguerre": laguerre_family,
    "laguerre_inverse": laguerre_inverse_family,
    "bernoulli": bernoulli_family,
    "dirac_perturbation": dirac_perturbation,
}


# -----------------------------
# Public API
# -----------------------------
def list_family_names() -> List[str]:
    return sorted(_BUILDERS.keys())


def get_family(name: str, **params) -> Family:
    """Look a family up by name; only dirac_perturbation takes parameters (alpha, atoms)."""
    if name not in _BUILDERS:
        raise InputContractError(f"unknown family {name!r}; choose from {', '.join(list_family_names())}")
    if params and name != "dirac_perturbation":
        raise InputContractError(f"family {name} takes no parameters, got {sorted(params)}")
    return _BUILDERS[name](**params)
