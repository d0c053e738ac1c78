from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Sequence, Tuple

from .scalar import to_scalar, to_scalars
from utils.errors import InputContractError
from utils.storage import decode_int, decode_rationals, encode_rationals, require_fields

# m_1..m_N and κ_1..κ_N (or r_1..r_N); index 0 holds order 1.
MomentSeq = Tuple[Fraction, ...]
CumulantSeq = Tuple[Fraction, ...]


@dataclass(frozen=True)
class MonicPoly:
    """Degree-d monic polynomial stored by its normalized coefficients.

    p(x) = Σ_k (−1)^k binom(d, k) ã_k x^{d−k}, with ã_0 = 1.
    """
    d: int
    atilde: Tuple[Fraction, ...]

    def __post_init__(self):
        atilde = to_scalars(self.atilde)
        if self.d < 1:
            raise InputContractError(f"Degree must be positive, got {self.d}")
        if len(atilde) != self.d + 1:
            raise InputContractError(f"Degree {self.d} needs {self.d + 1} normalized coefficients, got {len(atilde)}")
        if atilde[0] != 1:
            raise InputContractError(f"ã_0 must be 1, got {atilde[0]}")
        object.__setattr__(self, "atilde", atilde)

    @staticmethod
    def from_roots(roots: Sequence) -> "MonicPoly":
        """ã_k = e_k(roots) / binom(d, k)."""
        roots = to_scalars(roots)
        if not roots:
            raise InputContractError("from_roots needs at least one root")
        e = [Fraction(1)]
        for r in roots:
            # multiply Π(1 + r_i t) by (1 + r t)
            e = [a + r * b for a, b in zip(e + [Fraction(0)], [Fraction(0)] + e)]
        d = len(roots)
        return MonicPoly(d, tuple(e[k] / comb(d, k) for k in range(d + 1)))

    @staticmethod
    def from_coefficients(coeffs: Sequence) -> "MonicPoly":
        """From ordinary coefficients, highest degree first (leading 1)."""
        coeffs = to_scalars(coeffs)
        if len(coeffs) < 2 or coeffs[0] != 1:
            raise InputContractError("Need a monic polynomial of degree >= 1, highest coefficient first")
        d = len(coeffs) - 1
        return MonicPoly(d, tuple(coeffs[k] * (-1) ** k / comb(d, k) for k in range(d + 1)))

    @staticmethod
    def power(d: int, alpha=0) -> "MonicPoly":
        """(x − α)^d."""
        alpha = to_scalar(alpha)
        return MonicPoly(d, tuple(alpha ** k for k in range(d + 1)))

    def coefficients(self) -> List[Fraction]:
        """Ordinary coefficients of x^d, x^{d−1}, ..., x^0."""
        return [(-1) ** k * comb(self.d, k) * a for k, a in enumerate(self.atilde)]

    def elementary(self, k: int) -> Fraction:
        """e_k of the roots; zero beyond the degree."""
        if k > self.d:
            return Fraction(0)
        return comb(self.d, k) * self.atilde[k]

    def to_dict(self):
        return {"degree": self.d, "atilde": encode_rationals(self.atilde)}

    @staticmethod
    def from_dict(data: dict) -> "MonicPoly":
        data = require_fields(data, "degree", "atilde", what="polynomial file")
        return MonicPoly(decode_int(data["degree"], "degree"), tuple(decode_rationals(data["atilde"])))

    def __str__(self):
        terms = []
        for power, c in zip(range(self.d, -1, -1), self.coefficients()):
            if c == 0:
                continue
            mono = "" if power == 0 else ("x" if power == 1 else f"x^{power}")
            if mono and c == 1:
                coef = ""
            elif mono and c == -1:
                coef = "-"
            else:
                coef = str(c) + ("*" if mono else "")
            terms.append(coef + mono)
        return " + ".join(terms).replace("+ -", "- ")
