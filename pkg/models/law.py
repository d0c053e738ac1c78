from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .polynomial import CumulantSeq, MomentSeq
from .scalar import to_scalars
from .series import LaurentSeries, ZSeries
from utils.errors import InputContractError, ParseError
from utils.storage import decode_int, decode_rationals, encode_rationals, require_fields


def _check_length(values: Tuple[Fraction, ...], order: int, what: str) -> None:
    if len(values) != order:
        raise InputContractError(f"order {order} needs {order} {what}, got {len(values)}")


@dataclass(frozen=True)
class Law:
    """A limiting distribution known through its first `order` moments and free cumulants.

    Both sequences are stored; utils.freeprob builds them so that
    m_n = Σ_{NC(n)} r_π holds at every order.
    """
    order: int
    m: MomentSeq
    r: CumulantSeq

    def __post_init__(self):
        object.__setattr__(self, "m", to_scalars(self.m))
        object.__setattr__(self, "r", to_scalars(self.r))
        if self.order < 1:
            raise InputContractError(f"order must be positive, got {self.order}")
        _check_length(self.m, self.order, "moments")
        _check_length(self.r, self.order, "cumulants")

    def cauchy(self) -> LaurentSeries:
        return LaurentSeries.cauchy(self.m)

    def r_series(self) -> ZSeries:
        return ZSeries.r_series(self.r)

    def k_series(self) -> ZSeries:
        return ZSeries.k_series(self.r)

    def truncate(self, order: int) -> "Law":
        if order > self.order:
            raise InputContractError(f"cannot extend a law of order {self.order} to {order}")
        return Law(order, self.m[:order], self.r[:order])

    def to_dict(self):
        return {"order": self.order, "moments": encode_rationals(self.m), "cumulants": encode_rationals(self.r)}

    @staticmethod
    def from_dict(data: dict) -> "Law":
        """Accepts moments, cumulants or both; a missing partner is filled by the series route."""
        from utils.transforms import cumulants_from_moments, moments_from_cumulants

        data = require_fields(data, "order", what="law file")
        order = decode_int(data["order"], "order")
        m = tuple(decode_rationals(data["moments"]))[:order] if "moments" in data else None
        r = tuple(decode_rationals(data["cumulants"]))[:order] if "cumulants" in data else None
        if m is None and r is None:
            raise ParseError("law file needs 'moments' or 'cumulants'")
        if m is None:
            m = moments_from_cumulants(r)
        if r is None:
            r = cumulants_from_moments(m)
        law = Law(order, m, r)
        if moments_from_cumulants(law.r) != law.m:
            raise InputContractError("moments and cumulants in the law file are inconsistent")
        return law

    def __str__(self):
        return f"Law(order={self.order}, m={[str(x) for x in self.m]}, r={[str(x) for x in self.r]})"


@dataclass(frozen=True)
class InfLaw:
    """A pair (μ, μ′): base law plus infinitesimal moments and cumulants."""
    base: Law
    mprime: MomentSeq
    rprime: CumulantSeq

    def __post_init__(self):
        object.__setattr__(self, "mprime", to_scalars(self.mprime))
        object.__setattr__(self, "rprime", to_scalars(self.rprime))
        _check_length(self.mprime, self.base.order, "infinitesimal moments")
        _check_length(self.rprime, self.base.order, "infinitesimal cumulants")

    @property
    def order(self) -> int:
        return self.base.order

    def inf_cauchy(self) -> LaurentSeries:
        return LaurentSeries.infinitesimal(self.mprime)

    def rinf_series(self) -> ZSeries:
        return ZSeries.r_series(self.rprime)

    def to_dict(self):
        return {
            "order": self.order,
            "moments": encode_rationals(self.base.m),
            "cumulants": encode_rationals(self.base.r),
            "inf_moments": encode_rationals(self.mprime),
            "inf_cumulants": encode_rationals(self.rprime),
        }

    @staticmethod
    def from_dict(data: dict) -> "InfLaw":
        """inf_moments (or inf_cumulants) default to zero when absent."""
        from utils.transforms import inf_cauchy_from_rinf, rinf_from_inf_cauchy

        base = Law.from_dict(data)
        N = base.order
        if "inf_moments" in data:
            mprime = tuple(decode_rationals(data["inf_moments"]))[:N]
            _check_length(mprime, N, "infinitesimal moments")
            rprime = rinf_from_inf_cauchy(base.cauchy(), LaurentSeries.infinitesimal(mprime)).tail
        elif "inf_cumulants" in data:
            rprime = tuple(decode_rationals(data["inf_cumulants"]))[:N]
            _check_length(rprime, N, "infinitesimal cumulants")
            mprime = inf_cauchy_from_rinf(base.cauchy(), rprime).moments()
        else:
            mprime = rprime = (Fraction(0),) * N
        return InfLaw(base, mprime, rprime)


@dataclass(frozen=True)
class FluctLaw:
    """A polynomial sequence seen through its limit μ and cumulant fluctuations r̂_n."""
    base: Law
    rhat: CumulantSeq

    def __post_init__(self):
        object.__setattr__(self, "rhat", to_scalars(self.rhat))
        _check_length(self.rhat, self.base.order, "cumulant fluctuations")

    @property
    def order(self) -> int:
        return self.base.order

    def rhat_series(self) -> ZSeries:
        return ZSeries.r_series(self.rhat)

    def to_dict(self):
        return {
            "order": self.order,
            "moments": encode_rationals(self.base.m),
            "cumulants": encode_rationals(self.base.r),
            "rhat": encode_rationals(self.rhat),
        }

    @staticmethod
    def from_dict(data: dict) -> "FluctLaw":
        base = Law.from_dict(data)
        if "rhat" not in data:
            raise ParseError("fluctuation file needs 'rhat'")
        return FluctLaw(base, tuple(decode_rationals(data["rhat"]))[: base.order])
