from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from espart.partitions import (
    EMPTY,
    NotDivisible,
    Partition,
    PartitionFamily,
    count_all,
    count_binary,
    count_dary,
    count_family,
    direct_sum,
    enumerate_family,
    family,
    scale,
    unscale,
)

P = Partition.parse


def brute_partitions(n, allowed):
    """Oracle: every multiset of allowed values summing to n."""
    out = set()
    for length in range(n + 1):
        for combo in combinations_with_replacement(allowed, length):
            if sum(combo) == n:
                out.add(tuple(sorted(combo, reverse=True)))
    return out


def test_p3_of_5_listing():
    got = [str(p) for p in enumerate_family(family("all", 5, 3))]
    assert got == ["(3,1,1)", "(2,2,1)", "(2,1,1,1)", "(1,1,1,1,1)"]


def test_empty_partition():
    assert enumerate_family(family("binary", 0)) == [EMPTY]
    assert str(EMPTY) == "()"
    assert P("()") == EMPTY


def test_ternary_partitions_of_4():
    assert [str(p) for p in enumerate_family(family("dary", 4, d=3))] == ["(3,1)", "(1,1,1,1)"]


@pytest.mark.parametrize("n", range(0, 13))
@pytest.mark.parametrize("kind,d", [("all", 2), ("binary", 2), ("dary", 3), ("dary", 5)])
def test_enumeration_matches_bruteforce(n, kind, d):
    fam = PartitionFamily(kind, n, 0, d)
    allowed = fam.allowed_parts() if n else ()
    got = [p.parts for p in enumerate_family(fam)]
    assert set(got) == brute_partitions(n, allowed)
    assert got == sorted(got, reverse=True)  # decreasing lexicographic order
    assert len(got) == count_family(fam)


def test_known_counts():
    # A000041 and A018819 initial terms
    assert [count_all(n) for n in range(10)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    assert [count_binary(n) for n in range(10)] == [1, 1, 2, 2, 4, 4, 6, 6, 10, 10]
    assert count_dary(9, 3) == 5
    assert count_all(-1) == 0


def test_min_length_counts():
    for n in range(12):
        for k in range(5):
            fam = PartitionFamily("all", n, k)
            assert count_family(fam) == sum(1 for p in enumerate_family(family("all", n)) if p.length >= k)


def test_direct_sum_and_scaling():
    assert direct_sum(P("(3,3,2,1,1)"), P("(3,2,2,1,1)")) == P("(3,3,3,2,2,2,1,1,1,1)")
    assert scale(P("(4,2,2,1)"), 2) == P("(8,4,4,2)")
    assert unscale(P("(8,4,4,2)"), 2) == P("(4,2,2,1)")
    with pytest.raises(NotDivisible):
        unscale(P("(4,1)"), 2)


def test_parse_rejects_increasing():
    with pytest.raises(ValueError):
        P("(1,2)")


def test_bad_family():
    with pytest.raises(ValueError):
        PartitionFamily("odd", 3)
    with pytest.raises(ValueError):
        PartitionFamily("dary", 3, d=1)


parts_lists = st.lists(st.integers(1, 9), max_size=8)


@given(parts_lists)
def test_parse_str_round_trip(parts):
    lam = Partition.from_parts(parts)
    assert P(str(lam)) == lam
    assert lam.weight == sum(parts)
    assert lam.length == len(parts)


@given(parts_lists, parts_lists, st.integers(1, 5))
def test_scale_unscale_and_sum(a, b, m):
    x, y = Partition.from_parts(a), Partition.from_parts(b)
    assert unscale(scale(x, m), m) == x
    s = direct_sum(x, y)
    assert s.weight == x.weight + y.weight
    assert s == Partition.from_parts(a + b)
