import csv
import json
import os
import re
import tempfile
from fractions import Fraction
from typing import Iterable, List, Sequence

from utils.errors import InputContractError, ParseError

_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")
_INTEGER = re.compile(r"^\s*-?\d+\s*$")


# -----------------------------
# Rational codec
# -----------------------------
def encode_rational(value) -> str:
    """Fraction -> "num/den" ("num" when den == 1)."""
    if isinstance(value, float) or isinstance(value, bool):
        raise InputContractError(f"Refusing to serialize inexact value {value!r}")
    return str(Fraction(value))


def decode_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ParseError(f"Not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"Rationals are stored as \"num/den\" strings, got {text!r}")
    m = _RATIONAL.match(text)
    if not m:
        raise ParseError(f"Not a rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"Zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def encode_rationals(values: Iterable) -> List[str]:
    return [encode_rational(v) for v in values]


def decode_rationals(values) -> List[Fraction]:
    if not isinstance(values, list):
        raise ParseError(f"Expected a list of rationals, got {type(values).__name__}")
    return [decode_rational(v) for v in values]


def decode_int(value, field: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"'{field}' must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _INTEGER.match(value):
        return int(value)
    raise ParseError(f"'{field}' must be an integer, got {value!r}")


def require_fields(data, *fields: str, what: str = "file") -> dict:
    """`data` must be a JSON object carrying every name in `fields`."""
    if not isinstance(data, dict):
        raise ParseError(f"{what} must be a JSON object, got {type(data).__name__}")
    missing = [f for f in fields if f not in data]
    if missing:
        raise ParseError(f"{what} is missing {', '.join(repr(f) for f in missing)}")
    return data


# -----------------------------
# Files
# -----------------------------
def _atomic_write(path: str, write) -> None:
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=folder or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            write(f)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def save_json(path: str, data: dict):
    _atomic_write(path, lambda f: json.dump(data, f, indent=4))


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise InputContractError(f"{path}: {exc.strerror}") from exc


def save_text(path: str, text: str):
    _atomic_write(path, lambda f: f.write(text))


def save_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]):
    def _write(f):
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)
    _atomic_write(path, _write)
