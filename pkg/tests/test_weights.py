from __future__ import annotations

import random
from fractions import Fraction

import pytest

from emckit.constructions import build_A, build_B, generate_from_trace, prefix_size
from emckit.core import Family, KSet, binom, enumerate_ksets
from emckit.weights import (
    EnumerationInfeasible,
    WeightFrame,
    candidate_count,
    claim3_bound,
    family_weight_identity,
    rx_counts,
    wA_of_M,
    weight_cd,
    weight_value,
    wg_envelope,
    width,
)


def test_frame_canonical_layout():
    fr = WeightFrame(12, 3, 3)
    assert fr.prefix == 11
    assert fr.n_bar == 1
    assert fr.block_elements(1) == (1, 2, 3)
    assert fr.block_elements(3) == (7, 8, 9)
    assert fr.g0_elements() == (10, 11)
    assert fr.block_index(5) == 2
    assert fr.block_index(10) == 0
    fr.check_invariants()


def test_frame_huge_s_is_lazy():
    # far beyond any bit-vector cap; only arithmetic is allowed to happen
    s = 10**12
    fr = WeightFrame((s + 1) * 5, 5, s)
    assert fr.block_elements(s) == tuple(range((s - 1) * 5 + 1, s * 5 + 1))
    assert fr.block_index(s * 5 + 2) == 0
    assert fr.n_bar == 1


def test_frame_explicit_partition_validated():
    with pytest.raises(ValueError):
        WeightFrame(12, 3, 3, g0=(1, 2), blocks=((3, 4, 5), (6, 7, 8), (9, 10, 12)))
    fr = WeightFrame(12, 3, 3, g0=(1, 2), blocks=((3, 4, 5), (6, 7, 8), (9, 10, 11)))
    assert fr.block_index(1) == 0
    assert fr.block_index(9) == 3


def test_frame_m_subset_validation():
    with pytest.raises(ValueError):
        WeightFrame(12, 3, 3, m_indices=[1, 1, 2])
    with pytest.raises(ValueError):
        WeightFrame(12, 3, 3, m_indices=[1, 2, 4])


def test_width():
    fr = WeightFrame(12, 3, 3)
    t = KSet.from_elements(fr.prefix, [1, 4, 10])
    assert width(t, fr) == 2
    assert width(KSet(fr.prefix, 0), fr) == 0


def test_weight_values():
    # C(n_bar, k-d) / C(s-c, k-c)
    assert weight_value(2, 3, 2, 1, 2) == Fraction(1, 2)
    assert weight_value(2, 3, 2, 1, 1) == Fraction(2, 2)
    with pytest.raises(ValueError):
        weight_value(2, 3, 2, 2, 1)


def test_family_weight_identity_on_candidates():
    for k in (2, 3):
        for s in (k, k + 1):
            n = (s + 1) * k + 1
            fr = WeightFrame(n, k, s)
            for fam in (build_A(n, k, s), build_B(n, k, s)):
                lhs, rhs, ok = family_weight_identity(fam, fr)
                assert ok and lhs == len(fam)


def test_family_weight_identity_on_random_saturated():
    rng = random.Random(4)
    n, k, s = 9, 2, 3
    p = prefix_size(k, s)
    fr = WeightFrame(n, k, s)
    for _ in range(10):
        seeds = rng.sample(list(enumerate_ksets(p, k)), 3)
        fam = generate_from_trace(Family(p, None, seeds), n, k)
        lhs, rhs, ok = family_weight_identity(fam, fr)
        assert ok and lhs == len(fam)


def test_wA_symmetry_recovers_prefix_family_size():
    for k, s in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4)]:
        n = (s + 1) * k
        fr = WeightFrame(n, k, s)
        assert binom(s, k) * wA_of_M(fr) == binom(prefix_size(k, s), k)


def test_anchor_accepts_B():
    n, k, s = 9, 2, 3
    fr = WeightFrame(n, k, s, g0=(4,), blocks=((1, 5), (2, 6), (3, 7)))
    anchored = fr.anchor(build_B(n, k, s))
    assert anchored.anchored


def test_anchor_rejects_missing_block_and_trace_member_g0():
    n, k, s = 9, 2, 3
    fr = WeightFrame(n, k, s, g0=(4,), blocks=((1, 5), (2, 6), (3, 7)))
    # only one block present in the trace
    small = Family(n, 2, [KSet.from_elements(n, [1, 5])])
    with pytest.raises(ValueError):
        fr.anchor(small)
    # distinguished set inside the trace ({1,8} leaves the stub {1})
    fr2 = WeightFrame(n, k, s, g0=(1,), blocks=((2, 5), (3, 6), (4, 7)))
    fam = Family(n, 2, [KSet.from_elements(n, e) for e in ([2, 5], [3, 6], [4, 7], [1, 8])])
    with pytest.raises(ValueError):
        fr2.anchor(fam)


def test_candidate_counts_total():
    for k in (2, 3):
        fr = WeightFrame((k + 1) * k, k, k)
        u = k * k + k - 1
        for d in range(1, k + 1):
            total = sum(candidate_count(c, d, fr) for c in range(0, d + 1))
            assert total == binom(u, d)


def test_candidate_count_infeasible_guard():
    fr = WeightFrame(3660, 60, 60)
    with pytest.raises(EnumerationInfeasible):
        candidate_count(3, 30, fr)


def test_claim3_bound_values():
    assert claim3_bound(1, 1, 3) == 3 * 3
    assert claim3_bound(2, 3, 3) == Fraction(binom(3, 2) * 3**4, 1)
    with pytest.raises(ValueError):
        claim3_bound(0, 1, 3)


def test_wg_envelope_small():
    fr = WeightFrame(20, 4, 4)
    lhs, rhs, ok = wg_envelope(fr, 0)
    assert lhs > 0 and isinstance(lhs, Fraction)
    with pytest.raises(ValueError):
        wg_envelope(fr, 3)


def test_rx_counts_on_B():
    n, k, s = 16, 3, 3
    fr = WeightFrame(n, k, s)
    fam = build_B(n, k, s)
    rx = rx_counts(fam, fr)
    assert set(rx.r) == {2} and set(rx.x) == {2}
    # every defect-one local pair lies in the trace of B iff it meets [3]
    assert rx.r[2] + rx.x[2] > 0
    assert rx.chain_ok  # vacuous for k = 3


def test_weight_cd_consistency():
    fr = WeightFrame(10, 2, 3)
    assert weight_cd(1, 2, fr) == weight_value(2, 3, fr.n_bar, 1, 2)
