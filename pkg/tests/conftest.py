import random
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

from models.polynomial import MonicPoly
from utils.combinat import configure_cache
from utils.config import EXAMPLES_DIR
from utils.freeprob import law_bernoulli, law_marchenko_pastur, law_semicircle

EXAMPLES = Path(__file__).resolve().parent.parent / EXAMPLES_DIR


def random_rational(rng: random.Random, span: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_sequence(rng: random.Random, n: int) -> tuple:
    return tuple(random_rational(rng) for _ in range(n))


def random_poly(rng: random.Random, d: int) -> MonicPoly:
    return MonicPoly.from_roots(random_sequence(rng, d))


def taylor_coefficients(expr, var, count: int, start: int = 0) -> tuple:
    """[var^k] expr for k = start..start+count−1, as Fractions."""
    series = sympy.expand(sympy.series(expr, var, 0, start + count).removeO())
    coeffs = (sympy.Rational(series.coeff(var, k)) for k in range(start, start + count))
    return tuple(Fraction(int(c.p), int(c.q)) for c in coeffs)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def examples_dir() -> Path:
    return EXAMPLES


@pytest.fixture
def semicircle():
    return law_semicircle(8)


@pytest.fixture
def marchenko_pastur():
    return law_marchenko_pastur(8)


@pytest.fixture
def bernoulli():
    return law_bernoulli(8)


@pytest.fixture(autouse=True)
def no_disk_cache():
    configure_cache(None)
    yield
    configure_cache(None)
