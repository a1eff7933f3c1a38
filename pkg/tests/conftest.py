from __future__ import annotations

import random
from fractions import Fraction

import pytest

from germtools.exactpoly import MPoly, parse_poly
from germtools.germs import MapGerm

XY = ("x", "y")


def poly(text: str, vars=XY) -> MPoly:
    return parse_poly(text, vars)


def germ(f1: str, f2: str, f3: str, label: str | None = None) -> MapGerm:
    return MapGerm(poly(f1), poly(f2), poly(f3), label=label)


def random_poly(rng: random.Random, vars=XY, max_deg: int = 4,
                max_terms: int = 5, zero_ok: bool = True) -> MPoly:
    terms = {}
    for _ in range(rng.randint(0 if zero_ok else 1, max_terms)):
        exp = tuple(rng.randint(0, max_deg) for _ in vars)
        coeff = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        if coeff:
            terms[exp] = coeff
    return MPoly(vars, terms)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20170907)
