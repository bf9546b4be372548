from __future__ import annotations

import random

import pytest

from emckit.constructions import (
    TraceCountMismatch,
    build_A,
    build_B,
    crossover_n,
    extremal_sizes,
    generate_from_trace,
    prefix_size,
    size_via_trace,
    trace_of,
)
from emckit.core import Family, KSet, binom, enumerate_ksets
from emckit.matching import matching_number


def test_prefix_size():
    assert prefix_size(2, 3) == 7
    assert prefix_size(3, 2) == 8


def test_build_sizes_match_closed_forms():
    for (n, k, s) in [(7, 2, 3), (9, 2, 3), (8, 3, 2), (10, 2, 2)]:
        A, B = build_A(n, k, s), build_B(n, k, s)
        size_a, size_b = extremal_sizes(n, k, s)
        assert len(A) == size_a == binom(prefix_size(k, s), k)
        assert len(B) == size_b == binom(n, k) - binom(n - s, k)


def test_build_validation():
    with pytest.raises(ValueError):
        build_A(6, 2, 3)  # n below the prefix
    with pytest.raises(ValueError):
        build_B(4, 2, 5)


def test_candidates_have_matching_number_s():
    for k in (2, 3):
        for s in (1, 2, 3):
            n = (s + 1) * k + 1
            assert matching_number(build_A(n, k, s))[0] == s
            assert matching_number(build_B(n, k, s))[0] == s


def test_crossover_definition():
    for k in (2, 3):
        for s in range(k, 8):
            n = crossover_n(k, s)
            a1, b1 = extremal_sizes(n, k, s)
            a0, b0 = extremal_sizes(n - 1, k, s)
            assert b1 > a1
            assert b0 <= a0


def test_trace_of_B():
    tr = trace_of(build_B(9, 2, 3), 2, 3)
    # pairs meeting [3] inside the prefix, plus singleton stubs {1},{2},{3}
    sizes = sorted(t.size for t in tr.members)
    assert sizes.count(1) == 3
    assert all(t.min_element() <= 3 for t in tr.members)


def test_trace_requires_prefix():
    fam = build_B(6, 2, 2)
    with pytest.raises(ValueError):
        trace_of(fam, 2, 3)


def test_generate_from_trace_round_trip():
    B = build_B(9, 2, 3)
    tr = trace_of(B, 2, 3)
    assert generate_from_trace(tr, 9, 2) == B


def test_size_via_trace_on_candidates():
    for (n, k, s) in [(9, 2, 3), (10, 2, 3), (8, 3, 2), (9, 3, 2)]:
        for fam in (build_A(n, k, s), build_B(n, k, s)):
            tr = trace_of(fam, k, s)
            assert size_via_trace(tr, n, k, s, check=True) == len(fam)


def test_size_via_trace_detects_unsaturated_input():
    # a bare trace that misses supersets inside the prefix overcounts
    p = prefix_size(2, 3)
    tr = Family(p, None, [KSet.from_elements(p, [1])])
    with pytest.raises(TraceCountMismatch):
        size_via_trace(tr, 9, 2, 3, check=True)


def test_random_saturated_families_satisfy_identity():
    rng = random.Random(2)
    n, k, s = 9, 2, 3
    p = prefix_size(k, s)
    for _ in range(20):
        seeds = Family(p, None, rng.sample(list(enumerate_ksets(p, k)), 4))
        fam = generate_from_trace(seeds, n, k)
        tr = trace_of(fam, k, s)
        assert size_via_trace(tr, n, k, s, check=True) == len(fam)
