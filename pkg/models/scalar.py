from fractions import Fraction
from numbers import Rational
from typing import Iterable, Tuple

from utils.errors import InputContractError
from utils.storage import decode_rational

Scalar = Fraction


def to_scalar(value) -> Fraction:
    """Promote ints/Fractions/"p/q" strings to Fraction; floats and decimal strings are refused."""
    if isinstance(value, bool):
        raise InputContractError(f"Expected a rational number, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return decode_rational(value)
    raise InputContractError(f"Expected an exact rational, got {type(value).__name__} {value!r}")


def to_scalars(values: Iterable) -> Tuple[Fraction, ...]:
    return tuple(to_scalar(v) for v in values)
