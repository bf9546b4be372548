from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from emckit.core import (
    Family,
    KSet,
    binom,
    complete_family,
    enumerate_ksets,
    precedes,
)


def test_kset_basics():
    t = KSet.from_elements(7, [2, 5, 7])
    assert t.size == 3
    assert t.elements == (2, 5, 7)
    assert 5 in t and 3 not in t
    assert t.min_element() == 2
    assert t.mask == 0b1010010


def test_kset_rejects_out_of_range():
    with pytest.raises(ValueError):
        KSet.from_elements(5, [6])
    with pytest.raises(ValueError):
        KSet(5, 1 << 5)


def test_kset_set_algebra():
    a = KSet.from_elements(6, [1, 2, 3])
    b = KSet.from_elements(6, [3, 4])
    assert (a & b).elements == (3,)
    assert (a | b).elements == (1, 2, 3, 4)
    assert (a - b).elements == (1, 2)
    assert not a.isdisjoint(b)
    assert (a - b).isdisjoint(b)
    assert KSet.from_elements(6, [1, 3]).issubset(a)


def test_family_canonical_order_and_dedup():
    members = [KSet.from_elements(5, e) for e in ([3, 4], [1, 2], [1, 5])]
    fam = Family(5, 2, members)
    assert [m.elements for m in fam.members] == [(1, 2), (3, 4), (1, 5)]
    with pytest.raises(ValueError):
        Family(5, 2, members + [KSet.from_elements(5, [1, 2])])
    with pytest.raises(ValueError):
        Family(5, 2, [KSet.from_elements(5, [1, 2, 3])])


def test_family_text_roundtrip():
    fam = Family(6, 2, [KSet.from_elements(6, e) for e in ([1, 2], [2, 6])])
    text = fam.to_text()
    assert text.splitlines()[0] == "6 2"
    assert Family.from_text(text) == fam


def test_family_text_mixed_and_comments():
    text = "5 *  # header\n# a comment line\n1,2\n\n3\n"
    fam = Family.from_text(text)
    assert fam.k is None
    assert [m.elements for m in fam.members] == [(3,), (1, 2)]
    assert Family.from_text(fam.to_text()) == fam


def test_family_text_rejects_unsorted():
    with pytest.raises(ValueError):
        Family.from_text("5 2\n2,1\n")


def test_binom_conventions():
    assert binom(5, 2) == 10
    assert binom(3, 5) == 0
    assert binom(3, -1) == 0
    with pytest.raises(ValueError):
        binom(-1, 0)


def test_colex_enumeration_order():
    got = [t.elements for t in enumerate_ksets(4, 2)]
    assert got == [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]
    # colex on equal-size sets coincides with numeric mask order
    masks = [t.mask for t in enumerate_ksets(6, 3)]
    assert masks == sorted(masks)


@given(st.integers(1, 9), st.integers(0, 9))
def test_enumeration_count(n, k):
    if k > n:
        with pytest.raises(ValueError):
            list(enumerate_ksets(n, k))
    else:
        assert sum(1 for _ in enumerate_ksets(n, k)) == math.comb(n, k)


def test_precedes():
    a = KSet.from_elements(6, [1, 3])
    b = KSet.from_elements(6, [2, 5])
    assert precedes(a, b)
    assert not precedes(b, a)
    assert precedes(a, a)
    with pytest.raises(ValueError):
        precedes(a, KSet.from_elements(6, [1, 2, 3]))


@given(st.integers(2, 7))
def test_precedence_has_colex_as_linear_extension(n):
    sets = list(enumerate_ksets(n, 2))
    for i, f in enumerate(sets):
        for g in sets[i + 1 :]:
            assert not (precedes(g, f) and f != g)


def test_complete_family():
    fam = complete_family(5, 2)
    assert len(fam) == 10
    assert fam.k == 2
