"""The extremal candidate families, their sizes, and trace machinery.

Two candidates compete: all k-sets inside the prefix [(s+1)k-1], and all
k-sets meeting [s].  The trace of a family on the prefix drives the size
identity sum_d count_d * C(n_bar, k-d) with n_bar = n - (s+1)k + 1.
"""

from __future__ import annotations

import logging

from .core import Family, KSet, binom, enumerate_ksets

log = logging.getLogger(__name__)


class TraceCountMismatch(RuntimeError):
    """The trace counting identity disagreed with the materialized family."""


def prefix_size(k: int, s: int) -> int:
    return (s + 1) * k - 1


def build_A(n: int, k: int, s: int) -> Family:
    """All k-subsets of the prefix [(s+1)k-1], over ground set [n]."""
    if k < 1 or s < 1:
        raise ValueError("need k >= 1 and s >= 1")
    p = prefix_size(k, s)
    if n < p:
        raise ValueError(f"need n >= (s+1)k-1 = {p}, got n={n}")
    members = [t.with_ground(n) for t in enumerate_ksets(p, k)]
    return Family(n, k, members)


def build_B(n: int, k: int, s: int) -> Family:
    """All k-subsets of [n] meeting [s]."""
    if n < k:
        raise ValueError(f"need n >= k, got n={n}, k={k}")
    if s > n or s < 1:
        raise ValueError(f"need 1 <= s <= n, got s={s}")
    head = (1 << s) - 1
    members = [t for t in enumerate_ksets(n, k) if t.mask & head]
    return Family(n, k, members)


def extremal_sizes(n: int, k: int, s: int) -> tuple[int, int]:
    """Closed-form sizes of the two candidates: (C((s+1)k-1, k), C(n,k) - C(n-s,k))."""
    size_a = binom(prefix_size(k, s), k)
    size_b = binom(n, k) - binom(n - s, k)
    return size_a, size_b


def crossover_n(k: int, s: int) -> int:
    """The minimal n >= (s+1)k at which the [s]-star family overtakes the prefix family.

    The star size is strictly increasing in n while the prefix size is
    constant, so a linear scan with early exit is exact.
    """
    if not (s >= k >= 2):
        raise ValueError("need s >= k >= 2")
    n = (s + 1) * k
    while True:
        size_a, size_b = extremal_sizes(n, k, s)
        if size_b > size_a:
            return n
        n += 1


def trace_of(fam: Family, k: int, s: int) -> Family:
    """The family of intersections of members with the prefix, duplicates removed.

    An empty trace member (a member entirely beyond the prefix) is retained
    and flagged via a warning; it only makes counting sense when n_bar >= k.
    """
    p = prefix_size(k, s)
    if fam.n < p:
        raise ValueError(f"family ground set {fam.n} smaller than prefix {p}")
    head = (1 << p) - 1
    masks = {m & head for m in fam.masks}
    if 0 in masks and fam.members:
        log.warning("trace contains the empty set (member beyond the prefix)")
    return Family.from_masks(p, None, masks)


def generate_from_trace(tr: Family, n: int, k: int) -> Family:
    """All k-subsets of [n] containing at least one trace member."""
    tr_masks = sorted(tr.masks)
    members = []
    for t in enumerate_ksets(n, k):
        m = t.mask
        for tm in tr_masks:
            if m & tm == tm:
                members.append(t)
                break
    return Family(n, k, members)


def size_via_trace(tr: Family, n: int, k: int, s: int, check: bool = False) -> int:
    """Counting identity: sum over trace sizes d of count_d * C(n_bar, k-d).

    Expects the complete trace (all prefix intersections) of a saturated
    family; each member of the generated family then contributes through
    exactly one trace set.  With ``check=True`` the value is compared against
    the materialized family and a mismatch raises :class:`TraceCountMismatch`.
    """
    n_bar = n - (s + 1) * k + 1
    if n_bar < 0:
        raise ValueError("need n >= (s+1)k - 1")
    counts: dict[int, int] = {}
    for t in tr.members:
        if t.size == 0 and n_bar < k:
            raise ValueError("empty trace member needs n_bar >= k")
        counts[t.size] = counts.get(t.size, 0) + 1
    total = sum(c * binom(n_bar, k - d) for d, c in counts.items())
    if check:
        materialized = len(generate_from_trace(tr, n, k))
        if materialized != total:
            raise TraceCountMismatch(
                f"trace count {total} != materialized size {materialized}; "
                "input is not the complete trace of a saturated family"
            )
    return total
