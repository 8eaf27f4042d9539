from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from espart.espmap import (
    ImageRecord,
    check_injectivity,
    image_multiset,
    image_mult_rec,
    image_set,
    m_total,
    pre_h,
    pre_k,
    pre_k_bruteforce,
)
from espart.partitions import EMPTY, Partition, family

P = Partition.parse


def test_pre2_worked_example():
    assert pre_k(P("(3,2,1,1)"), 2) == P("(6,3,3,2,2,1)")


def test_small_cases():
    lam = P("(5,3,2,2)")
    assert pre_k(lam, 1) == lam
    assert pre_k(P("(2,1)"), 3) == EMPTY
    assert pre_k(P("(1,1,1)"), 2) == P("(1,1,1)")
    # e_2 of four ones has C(4,2) summands
    assert pre_k(P("(1,1,1,1)"), 2).length == 6


def test_pre_h_examples():
    assert pre_h(P("(4,3)"), 3) == P("(64,48,36,27)")
    assert pre_h(P("(2,1)"), 2) == P("(4,2,1)")
    assert pre_h(P("(7,2,2)"), 1) == P("(7,2,2)")


def test_image_mult_rec_examples():
    assert image_mult_rec(P("(3,2,1,1)"), 2) == 2
    assert image_mult_rec(P("(1,1,1)"), 1) == 3
    assert image_mult_rec(P("(4,2,2,1)"), 8) == 2


parts = st.lists(st.integers(1, 12), min_size=0, max_size=9).map(Partition.from_parts)


@given(parts, st.integers(1, 5))
def test_pre_k_matches_subset_oracle(lam, k):
    img = pre_k(lam, k)
    assert img == pre_k_bruteforce(lam, k)
    assert img.length == comb(lam.length, k)


@given(parts)
def test_pre2_weight_is_e2(lam):
    w = lam.weight
    assert pre_k(lam, 2).weight == (w * w - sum(p * p for p in lam.parts)) // 2


@given(parts, st.integers(1, 200))
def test_mult_rec_matches_expansion(lam, j):
    assert image_mult_rec(lam, j) == pre_k(lam, 2).m(j)


def test_binary_injective_to_30():
    assert check_injectivity("binary", range(31), 2).passed


def test_collision_reported_not_raised():
    rep = check_injectivity("all", range(14), 3)
    assert not rep.passed
    a, b, img = rep.collision
    assert pre_k(a, 3) == pre_k(b, 3) == img and a != b
    assert "FAIL" in rep.summary()


def test_two_ones_restriction_injective():
    rep = check_injectivity("all", range(16), 2, where=lambda lam: lam.m(1) >= 2)
    assert rep.passed and rep.checked > 0


def test_records_and_totals():
    recs = image_multiset(family("binary", 4, 2), 2)
    assert [str(r.source) for r in recs] == ["(2,2)", "(2,1,1)", "(1,1,1,1)"]
    assert m_total(recs, 1) == 1 + 6
    assert recs[0].to_json(4, 2) == '{"n":4,"k":2,"source":"(2,2)","image":"(4)"}'
    imgs, coll = image_set("binary", 4, 2)
    assert len(imgs) == 3 and coll == []


def test_record_is_frozen():
    rec = ImageRecord(P("(1)"), P("(1)"))
    with pytest.raises(Exception):
        rec.source = EMPTY
