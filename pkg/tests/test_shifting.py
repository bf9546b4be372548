from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from emckit.core import Family, KSet, enumerate_ksets
from emckit.matching import matching_number
from emckit.shifting import (
    compress_ij,
    is_precedence_closed,
    is_shifted,
    precedence_downset_closure,
    shift_to_fixpoint,
)


def random_family(rng, n, k, max_size=12):
    pool = list(enumerate_ksets(n, k))
    return Family(n, k, rng.sample(pool, min(len(pool), rng.randrange(1, max_size))))


def test_compress_basic():
    fam = Family(4, 2, [KSet.from_elements(4, e) for e in ([2, 4], [1, 3])])
    out = compress_ij(fam, 1, 4)
    assert {m.elements for m in out.members} == {(1, 2), (1, 3)}


def test_compress_collision_keeps_original():
    fam = Family(4, 2, [KSet.from_elements(4, e) for e in ([1, 2], [2, 4])])
    out = compress_ij(fam, 1, 4)
    # {2,4} -> {1,2} collides, so {2,4} stays
    assert out == fam


def test_compress_validates_indices():
    fam = Family(4, 2, [KSet.from_elements(4, [1, 2])])
    with pytest.raises(ValueError):
        compress_ij(fam, 2, 2)
    with pytest.raises(ValueError):
        compress_ij(fam, 0, 1)


def test_compress_preserves_size_and_uniformity():
    rng = random.Random(3)
    for _ in range(25):
        fam = random_family(rng, 7, 3)
        out = compress_ij(fam, rng.randrange(1, 7), 7)
        assert len(out) == len(fam)
        assert out.k == fam.k


def test_fixpoint_is_shifted_and_same_size():
    rng = random.Random(11)
    for _ in range(25):
        fam = random_family(rng, 7, 3)
        fixed = shift_to_fixpoint(fam)
        assert len(fixed) == len(fam)
        assert is_shifted(fixed)
        # idempotent
        assert shift_to_fixpoint(fixed) == fixed


def test_compression_never_increases_matching_number():
    rng = random.Random(5)
    for _ in range(20):
        fam = random_family(rng, 8, 2)
        nu = matching_number(fam)[0]
        assert matching_number(shift_to_fixpoint(fam))[0] <= nu


def test_decrement_criterion_matches_precedence_closure():
    rng = random.Random(17)
    for _ in range(30):
        fam = random_family(rng, 7, 3)
        closed = precedence_downset_closure(fam)
        assert is_shifted(closed)
        assert is_precedence_closed(closed)
        assert is_shifted(fam) == is_precedence_closed(fam)


def test_closure_is_superset_and_minimal():
    fam = Family(5, 2, [KSet.from_elements(5, [3, 5])])
    closed = precedence_downset_closure(fam)
    assert fam.mask_set() <= closed.mask_set()
    # {3,5} dominates exactly the pairs (a,b) with a<=3, b<=5
    assert len(closed) == 9


def test_is_shifted_rejects_mixed():
    fam = Family(5, None, [KSet.from_elements(5, [1]), KSet.from_elements(5, [1, 2])])
    with pytest.raises(ValueError):
        is_shifted(fam)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_fixpoint_members_precede_or_equal_originals_in_bulk(data):
    n, k = 6, 2
    pool = list(enumerate_ksets(n, k))
    idx = data.draw(st.sets(st.integers(0, len(pool) - 1), min_size=1, max_size=8))
    fam = Family(n, k, [pool[i] for i in idx])
    fixed = shift_to_fixpoint(fam)
    # total colex weight never increases under compression
    assert sum(m.mask for m in fixed.members) <= sum(m.mask for m in fam.members)
