from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .law import FluctLaw, InfLaw, Law
from .polynomial import MonicPoly
from .series import LaurentSeries
from utils.errors import LadderError
from utils.storage import encode_rational, encode_rationals


@dataclass(frozen=True)
class FamilyMeta:
    """What is known about the d → ∞ behavior of a family, to a given order."""
    law: Law
    fluct: Optional[FluctLaw] = None
    inf: Optional[InfLaw] = None


@dataclass(frozen=True)
class Family:
    name: str
    generator: Callable[[int], MonicPoly]
    admissible: Callable[[int], bool]
    meta: Callable[[int], FamilyMeta]
    params: Dict[str, object] = field(default_factory=dict)

    def __call__(self, d: int) -> MonicPoly:
        if not self.admissible(d):
            raise LadderError(f"degree {d} is not admissible for family {self.name}")
        p = self.generator(d)
        if p.d != d:
            raise LadderError(f"family {self.name} produced degree {p.d} for d={d}")
        return p

    def label(self) -> str:
        if not self.params:
            return self.name
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({args})"


@dataclass(frozen=True)
class MinorFlow:
    """d ↦ p_d^{(s)}/(d)_s for a base family, with the limit of
    (d − s)·μ_{p_d^{(s)}} − d·μ given by its Cauchy transform τ."""
    family: Family
    s: int
    generator: Callable[[int], MonicPoly]
    tau: Callable[[int], LaurentSeries]

    @property
    def name(self) -> str:
        return f"{self.family.name}_minor"

    def admissible(self, d: int) -> bool:
        return d > self.s and self.family.admissible(d)

    def __call__(self, d: int) -> MonicPoly:
        if not self.admissible(d):
            raise LadderError(f"degree {d} is not admissible for the s={self.s} minor flow of {self.family.name}")
        return self.generator(d)

    def label(self) -> str:
        return f"{self.family.label()} minor s={self.s}"


@dataclass
class LadderReport:
    n: int
    quantity: str
    ladder: List[Tuple[int, Fraction]]
    steps: List[Fraction]
    richardson: Fraction
    predicted: Optional[Fraction] = None
    abs_error: Optional[Fraction] = None

    def rows(self) -> List[list]:
        """One CSV row per rung: n, d, delta_exact, richardson, predicted, abs_error.

        Rung k ≥ 2 carries R(d_{k−1}, d_k); the first rung leaves it blank.
        """
        out = []
        for k, (d, delta) in enumerate(self.ladder):
            if k == 0:
                step = err = ""
            else:
                value = self.steps[k - 1]
                step = encode_rational(value)
                err = "" if self.predicted is None else encode_rational(abs(value - self.predicted))
            predicted = "" if self.predicted is None else encode_rational(self.predicted)
            out.append([self.n, d, encode_rational(delta), step, predicted, err])
        return out

    def to_dict(self):
        return {
            "n": self.n,
            "quantity": self.quantity,
            "ladder": [{"d": d, "delta_exact": encode_rational(delta)} for d, delta in self.ladder],
            "steps": encode_rationals(self.steps),
            "richardson": encode_rational(self.richardson),
            "predicted": None if self.predicted is None else encode_rational(self.predicted),
            "abs_error": None if self.abs_error is None else encode_rational(self.abs_error),
        }
