from __future__ import annotations

import random
from fractions import Fraction

import pytest

from rigidcheck import Hypergraph


def rand_frac(rng: random.Random, lo: int = -999, hi: int = 999, den: int = 60) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(lo, hi)
    return Fraction(num, rng.randint(1, den))


@pytest.fixture
def pair_unique() -> Hypergraph:
    """Two-vertex order-4 pattern whose completion is unique at rank 1."""
    return Hypergraph(4, ["a", "b"], [("a",) * 4, ("a", "a", "a", "b"), ("b",) * 4])


@pytest.fixture
def pair_inconclusive() -> Hypergraph:
    """Two-vertex order-4 pattern where the global certificate fails."""
    return Hypergraph(4, ["a", "b"], [("a",) * 4, ("a", "b", "b", "b"), ("a", "a", "a", "b")])


@pytest.fixture
def chain_order3() -> Hypergraph:
    """3-uniform chain on four vertices."""
    return Hypergraph(3, ["a", "b", "c", "d"], [("a", "a", "a"), ("a", "a", "b"), ("a", "b", "c"), ("b", "c", "d")])


SQUARE = [("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")]
TRIANGLE = [("1", "2"), ("2", "3"), ("1", "3")]


@pytest.fixture
def square() -> Hypergraph:
    return Hypergraph(2, ["1", "2", "3", "4"], SQUARE)


@pytest.fixture
def square_diag() -> Hypergraph:
    return Hypergraph(2, ["1", "2", "3", "4"], SQUARE + [("1", "3")])


@pytest.fixture
def triangle() -> Hypergraph:
    return Hypergraph(2, ["1", "2", "3"], TRIANGLE)
