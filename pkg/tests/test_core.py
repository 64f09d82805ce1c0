import random
from fractions import Fraction

import pytest

from thetacob.core import (
    EMPTY,
    Partition,
    bernoulli,
    catalan,
    parse_partition,
    partition_factorial,
    partition_union,
    partitions_of,
    splittings,
)


def partition_count_oracle(n):
    """Independent dynamic-programming partition counter."""
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for maxpart in range(n + 1):
        table[maxpart][0] = 1
    for maxpart in range(1, n + 1):
        for m in range(1, n + 1):
            table[maxpart][m] = table[maxpart - 1][m]
            if m >= maxpart:
                table[maxpart][m] += table[maxpart][m - maxpart]
    return table[n][n]


def test_partition_canonical_form():
    assert Partition([1, 3, 2]) == Partition((3, 2, 1))
    assert Partition().weight == 0 and Partition().length == 0
    p = Partition((3, 2, 1))
    assert p.weight == 6 and p.length == 3
    with pytest.raises(ValueError):
        Partition((0, 1))
    with pytest.raises(ValueError):
        Partition((2, -1))


def test_partition_string_roundtrip():
    assert str(Partition((2, 1))) == "2,1"
    assert parse_partition("2,1") == Partition((2, 1))
    assert parse_partition("") == EMPTY


def test_partitions_of_small():
    assert partitions_of(0) == (EMPTY,)
    assert [tuple(p) for p in partitions_of(4)] == [
        (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(partitions_of(10)) == 42


def test_partitions_reverse_lexicographic():
    for n in range(1, 9):
        parts = [tuple(p) for p in partitions_of(n)]
        assert parts == sorted(parts, reverse=True)


def test_partition_count_against_oracle():
    for n in range(21):
        assert len(partitions_of(n)) == partition_count_oracle(n)


def test_partition_factorial():
    assert partition_factorial(EMPTY) == 1
    assert partition_factorial(Partition((2, 1))) == 12
    assert partition_factorial(Partition((3, 3, 1))) == 1152


def test_bernoulli_reference_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(6) == Fraction(1, 42)
    assert bernoulli(8) == Fraction(-1, 30)
    assert bernoulli(10) == Fraction(5, 66)


def test_bernoulli_odd_vanish():
    for k in range(1, 16):
        assert bernoulli(2 * k + 1) == 0


def test_catalan():
    assert catalan(0) == 1
    assert catalan(3) == 5
    assert catalan(5) == 42
    # direct binomial evaluation as the oracle
    from math import comb
    for n in range(12):
        assert catalan(n) * (n + 1) == comb(2 * n, n)


def test_splittings_multiset_convention():
    pairs = splittings(Partition((1, 1)))
    assert len(pairs) == 3
    assert (Partition((1,)), Partition((1,))) in pairs
    pairs21 = splittings(Partition((2, 1)))
    assert len(pairs21) == 4
    # every pair unions back to the original
    for mu, nu in pairs21:
        assert partition_union(mu, nu) == Partition((2, 1))


def test_rational_arithmetic_exact():
    rng = random.Random(4142)
    for _ in range(200):
        a = Fraction(rng.randint(-2**63, 2**63), rng.randint(1, 2**63))
        c = Fraction(rng.randint(-2**63, 2**63), rng.randint(1, 2**63))
        assert (a + c) - c == a
        assert a.denominator > 0
