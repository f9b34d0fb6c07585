"""Shared brute-force oracles for the test suite.

The oracles deliberately avoid the library's streaming recurrence: sequences
come from gcd enumeration plus sorting, gaps from determinants on the sorted
list.  Expected values frozen in the tests were computed with these.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import gcd

import pytest


@lru_cache(maxsize=None)
def cached_gap_histogram(q_max: int, h: int):
    """Session-wide cache for the expensive large-order streaming passes."""
    from oddfarey.farey import gap_histogram

    return gap_histogram(q_max, h)


def brute_farey(q_max: int) -> list[Fraction]:
    """All reduced a/q in (0,1] with q <= q_max, by enumeration and sorting."""
    out = {
        Fraction(a, q)
        for q in range(1, q_max + 1)
        for a in range(1, q + 1)
        if gcd(a, q) == 1
    }
    return sorted(out)


def brute_odd_farey(q_max: int) -> list[Fraction]:
    return [f for f in brute_farey(q_max) if f.denominator % 2 == 1]


def brute_gaps(fractions: list[Fraction]) -> list[int]:
    return [
        g2.numerator * g.denominator - g.numerator * g2.denominator
        for g, g2 in zip(fractions, fractions[1:])
    ]


def brute_window_counts(q_max: int, h: int) -> dict[tuple[int, ...], int]:
    gaps = brute_gaps(brute_odd_farey(q_max))
    out: dict[tuple[int, ...], int] = {}
    for i in range(len(gaps) - h + 1):
        key = tuple(gaps[i : i + h])
        out[key] = out.get(key, 0) + 1
    return out


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260810)


# The order-8 sequence and its odd-denominator subsequence, as frozen
# reference data (22 and 13 entries).
F8 = [
    Fraction(*t)
    for t in [
        (1, 8), (1, 7), (1, 6), (1, 5), (1, 4), (2, 7), (1, 3), (3, 8),
        (2, 5), (3, 7), (1, 2), (4, 7), (3, 5), (5, 8), (2, 3), (5, 7),
        (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (1, 1),
    ]
]
F8_ODD = [
    Fraction(*t)
    for t in [
        (1, 7), (1, 5), (2, 7), (1, 3), (2, 5), (3, 7), (4, 7), (3, 5),
        (2, 3), (5, 7), (4, 5), (6, 7), (1, 1),
    ]
]
