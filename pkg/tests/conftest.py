"""Shared sweep builders for the test suite; everything is seeded."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest


def sweep_200(seed: int = 0) -> list[Fraction]:
    """Integers 1..100 plus 100 seeded fractions with num, den <= 100."""
    values = [Fraction(k) for k in range(1, 101)]
    rng = random.Random(seed)
    while len(values) < 200:
        values.append(Fraction(rng.randint(1, 100), rng.randint(1, 100)))
    return values


def random_rationals(count: int, limit: int, seed: int, signed: bool = True) -> list[Fraction]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        num = rng.randint(-limit, limit) if signed else rng.randint(1, limit)
        if num == 0:
            continue
        out.append(Fraction(num, rng.randint(1, limit)))
    return out


@pytest.fixture(scope="session")
def m_sweep() -> list[Fraction]:
    return sweep_200()
