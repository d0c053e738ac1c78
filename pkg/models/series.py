"""
Truncated formal series with exact coefficients.

Both classes store Σ_k c_k x^k for k = start .. prec−1 and know nothing
about x^prec and beyond. LaurentSeries uses x = 1/z (so it holds G, H,
ω, θ: one z term, a constant, then 1/z, 1/z², ...). ZSeries uses x = z
(R, K, R^inf, R̂: an optional 1/z pole, then 1, z, z², ...).

The guaranteed prefix is tracked through every operation from the
operands' valuations, so a result never claims a coefficient it could
not have computed. Addition refuses operands of different order;
`truncate` lowers an order explicitly.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from .scalar import to_scalar, to_scalars
from utils.errors import CompositionError, InputContractError, NonInvertibleError, SeriesOrderError
from utils.storage import (
    decode_int,
    decode_rational,
    decode_rationals,
    encode_rational,
    encode_rationals,
    require_fields,
)


@dataclass(frozen=True, eq=False)
class _Truncated:
    start: int
    coeffs: Tuple[Fraction, ...]
    restricted: bool = False

    # order = prec − _OFFSET
    _OFFSET = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", to_scalars(self.coeffs))

    # -----------------------------
    # Bookkeeping
    # -----------------------------
    @property
    def prec(self) -> int:
        """Coefficients of x^k are known for k < prec."""
        return self.start + len(self.coeffs)

    @property
    def order(self) -> int:
        return self.prec - self._OFFSET

    def coefficient(self, k: int) -> Fraction:
        """Coefficient of x^k in the storage variable."""
        if k >= self.prec:
            raise SeriesOrderError(f"coefficient of x^{k} is beyond the known prefix (x^{self.prec - 1})")
        if k < self.start:
            return Fraction(0)
        return self.coeffs[k - self.start]

    def valuation(self) -> int:
        """First k with a non-zero coefficient; prec when everything known is zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.start + i
        return self.prec

    @classmethod
    def _build(cls, start: int, prec: int, fn: Callable[[int], Fraction]):
        if prec < start:
            start = prec
        return cls(start, tuple(fn(k) for k in range(start, prec)))

    @classmethod
    def _constant(cls, value, prec: int):
        value = to_scalar(value)
        return cls._build(min(0, prec), prec, lambda k: value if k == 0 else Fraction(0))

    def truncate(self, order: int):
        """The same series known only through `order`."""
        prec = order + self._OFFSET
        if prec > self.prec:
            raise SeriesOrderError(f"cannot raise order {self.order} to {order}")
        return type(self)._build(self.start, prec, self.coefficient)

    def _normalized(self):
        v = self.valuation()
        return type(self).__name__, self.prec, tuple(self.coeffs[v - self.start:])

    def __eq__(self, other):
        if not isinstance(other, _Truncated):
            return NotImplemented
        return self._normalized() == other._normalized()

    def __hash__(self):
        return hash(self._normalized())

    # -----------------------------
    # Arithmetic
    # -----------------------------
    def _same_kind(self, other) -> None:
        if type(self) is not type(other):
            raise InputContractError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def _plus(self, other):
        # sum known to the shorter prefix; internal callers only
        self._same_kind(other)
        prec = min(self.prec, other.prec)
        start = min(self.start, other.start)
        return type(self)._build(start, prec, lambda k: self.coefficient(k) + other.coefficient(k))

    def __add__(self, other):
        if isinstance(other, _Truncated):
            self._same_kind(other)
            if self.order != other.order:
                raise SeriesOrderError(f"adding series of order {self.order} and {other.order}")
            return self._plus(other)
        value = to_scalar(other)
        return self._plus(type(self)._constant(value, self.prec))

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.start, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, _Truncated):
            value = to_scalar(other)
            return type(self)(self.start, tuple(value * c for c in self.coeffs))
        self._same_kind(other)
        va, vb = self.valuation(), other.valuation()
        prec = min(self.prec + vb, other.prec + va)
        start = va + vb
        if start >= prec:
            return type(self)(prec, ())
        a = [self.coefficient(k) for k in range(va, self.prec)]
        b = [other.coefficient(k) for k in range(vb, other.prec)]
        out = []
        for idx in range(prec - start):
            out.append(sum((a[i] * b[idx - i] for i in range(idx + 1)), Fraction(0)))
        return type(self)(start, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        v = self.valuation()
        if v >= self.prec:
            raise NonInvertibleError("leading coefficient is not known to be non-zero")
        a = [self.coefficient(k) for k in range(v, self.prec)]
        inv0 = 1 / a[0]
        b: List[Fraction] = [inv0]
        for k in range(1, len(a)):
            b.append(-inv0 * sum((a[i] * b[k - i] for i in range(1, k + 1)), Fraction(0)))
        return type(self)(-v, tuple(b))

    def __truediv__(self, other):
        if not isinstance(other, _Truncated):
            value = to_scalar(other)
            if value == 0:
                raise NonInvertibleError("division by zero")
            return self * (1 / value)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * to_scalar(other)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = type(self)._constant(1, self.prec + max(0, k) * abs(self.valuation()) + 1)
        for _ in range(k):
            out = out * self
        return out

    def scale_argument(self, t):
        """f(t·z)."""
        t = to_scalar(t)
        if t == 0:
            raise InputContractError("scale factor must be non-zero")
        return type(self)(self.start, tuple(c * self._argument_weight(t, k) for k, c in enumerate(self.coeffs, self.start)))

    # -----------------------------
    # Composition
    # -----------------------------
    def _argument(self, inner: "_Truncated") -> "_Truncated":
        """The storage variable of self evaluated at `inner`."""
        raise NotImplementedError

    def compose(self, inner: "_Truncated"):
        """self ∘ inner, as a series in inner's variable."""
        if inner.restricted:
            raise CompositionError("general series cannot be composed into θ; use compose_atomic_into_theta")
        X = self._argument(inner)
        vx = X.valuation()
        if vx < 1:
            raise CompositionError("inner series does not make the outer variable small")
        cap = self.prec * vx
        result = None
        power = None
        negative = None
        for k in range(self.start, self.prec):
            if k < 0:
                if negative is None:
                    negative = X.inverse()
                term = negative ** (-k) if k < -1 else negative
            elif k == 0:
                term = type(X)._constant(1, cap)
            else:
                power = X if power is None else power * X
                term = power
            c = self.coefficient(k)
            if c == 0:
                continue
            term = term * c
            result = term if result is None else result._plus(term)
        if result is None:
            return type(X)(cap, ())
        if result.prec > cap:
            result = type(X)._build(result.start, cap, result.coefficient)
        return result


class LaurentSeries(_Truncated):
    """top·z + constant + Σ_{n=0}^{N} c_n z^{−n−1}; order N."""

    _OFFSET = 2

    @staticmethod
    def cauchy(moments: Sequence) -> "LaurentSeries":
        """G(z) = Σ_{n≥0} m_n z^{−n−1} with m_0 = 1."""
        return LaurentSeries(1, (Fraction(1),) + to_scalars(moments))

    @staticmethod
    def infinitesimal(mprime: Sequence) -> "LaurentSeries":
        """G_{μ′}(z) = Σ_{n≥1} m′_n z^{−n−1}."""
        return LaurentSeries(1, (Fraction(0),) + to_scalars(mprime))

    @staticmethod
    def from_parts(order: int, top=0, constant=0, coeffs: Sequence = ()) -> "LaurentSeries":
        coeffs = to_scalars(coeffs)
        if len(coeffs) != order + 1:
            raise InputContractError(f"order {order} needs coefficients c_0..c_{order}, got {len(coeffs)}")
        return LaurentSeries(-1, (to_scalar(top), to_scalar(constant)) + coeffs)

    @staticmethod
    def zero(order: int) -> "LaurentSeries":
        return LaurentSeries(order + 2, ())

    @staticmethod
    def _argument_weight(t: Fraction, k: int) -> Fraction:
        return t ** (-k)

    @property
    def top(self) -> Fraction:
        return self.coefficient(-1)

    @property
    def constant(self) -> Fraction:
        return self.coefficient(0)

    def coeff(self, n: int) -> Fraction:
        """Coefficient of z^{−n−1}."""
        return self.coefficient(n + 1)

    @property
    def tail(self) -> Tuple[Fraction, ...]:
        """c_0..c_N."""
        return tuple(self.coeff(n) for n in range(self.order + 1))

    def is_cauchy(self) -> bool:
        return self.top == 0 and self.constant == 0 and self.coeff(0) in (0, 1)

    def moments(self) -> Tuple[Fraction, ...]:
        """c_1..c_N; the moments when this is a Cauchy transform."""
        return self.tail[1:]

    def derivative(self) -> "LaurentSeries":
        """d/dz; the order goes up by one since the unknown tail moves deeper."""
        prec = self.prec + 1
        return LaurentSeries._build(self.start + 1, prec, lambda k: -(k - 1) * self.coefficient(k - 1))

    def _argument(self, inner):
        return inner.inverse()

    def to_dict(self):
        return {
            "order": self.order,
            "top": encode_rational(self.top),
            "constant": encode_rational(self.constant),
            "coeffs": encode_rationals(self.tail),
        }

    @staticmethod
    def from_dict(data: dict) -> "LaurentSeries":
        data = require_fields(data, "order", "coeffs", what="series")
        return LaurentSeries.from_parts(
            decode_int(data["order"], "order"),
            decode_rational(data.get("top", "0")),
            decode_rational(data.get("constant", "0")),
            decode_rationals(data["coeffs"]),
        )

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs, self.start):
            if c:
                terms.append(f"{c}" + ("*z" if k == -1 else "" if k == 0 else f"*z^-{k}"))
        return (" + ".join(terms) or "0") + f" + O(z^-{self.prec})"


class ZSeries(_Truncated):
    """pole/z + Σ_{n=1}^{N} r_n z^{n−1}; order N."""

    _OFFSET = 0

    @staticmethod
    def r_series(cumulants: Sequence) -> "ZSeries":
        """R(z) = Σ r_n z^{n−1}."""
        return ZSeries(0, to_scalars(cumulants))

    @staticmethod
    def k_series(cumulants: Sequence) -> "ZSeries":
        """K(z) = 1/z + R(z)."""
        return ZSeries(-1, (Fraction(1),) + to_scalars(cumulants))

    @staticmethod
    def from_parts(order: int, pole=0, coeffs: Sequence = ()) -> "ZSeries":
        coeffs = to_scalars(coeffs)
        if len(coeffs) != order:
            raise InputContractError(f"order {order} needs coefficients r_1..r_{order}, got {len(coeffs)}")
        return ZSeries(-1, (to_scalar(pole),) + coeffs)

    @staticmethod
    def zero(order: int) -> "ZSeries":
        return ZSeries(order, ())

    @staticmethod
    def _argument_weight(t: Fraction, k: int) -> Fraction:
        return t ** k

    @property
    def pole(self) -> Fraction:
        return self.coefficient(-1)

    def r(self, n: int) -> Fraction:
        """Coefficient of z^{n−1}."""
        return self.coefficient(n - 1)

    @property
    def tail(self) -> Tuple[Fraction, ...]:
        """r_1..r_N."""
        return tuple(self.r(n) for n in range(1, self.order + 1))

    def derivative(self) -> "ZSeries":
        """d/dz; the order drops by one."""
        return ZSeries._build(self.start - 1, self.prec - 1, lambda k: (k + 1) * self.coefficient(k + 1))

    def _argument(self, inner):
        return inner

    def to_dict(self):
        return {"order": self.order, "pole": encode_rational(self.pole), "coeffs": encode_rationals(self.tail)}

    @staticmethod
    def from_dict(data: dict) -> "ZSeries":
        data = require_fields(data, "order", "coeffs", what="series")
        return ZSeries.from_parts(
            decode_int(data["order"], "order"),
            decode_rational(data.get("pole", "0")),
            decode_rationals(data["coeffs"]),
        )

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs, self.start):
            if c:
                terms.append(f"{c}" + ("/z" if k == -1 else "" if k == 0 else "*z" if k == 1 else f"*z^{k}"))
        return (" + ".join(terms) or "0") + f" + O(z^{self.prec})"
