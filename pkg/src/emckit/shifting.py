"""The (i,j)-compression operator and shiftedness checks."""

from __future__ import annotations

from collections import deque

from .core import Family, KSet, precedes


def compress_ij(fam: Family, i: int, j: int) -> Family:
    """Replace j by i (i < j) in every member where the result is new.

    A member containing j but not i is rewritten unless the rewritten set is
    already present, in which case it is kept.  Cardinality is preserved.
    """
    if not 1 <= i < j <= fam.n:
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={fam.n}")
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    present = fam.mask_set()
    out = []
    for m in fam.masks:
        if m & bj and not m & bi:
            repl = (m & ~bj) | bi
            out.append(m if repl in present else repl)
        else:
            out.append(m)
    return Family.from_masks(fam.n, fam.k, out)


def shift_to_fixpoint(fam: Family) -> Family:
    """Apply compressions over all i < j until nothing changes.

    Sweep order is fixed: (i, j) lexicographic, restarting after any change,
    so the normal form is deterministic.
    """
    current = fam
    changed = True
    while changed:
        changed = False
        for j in range(2, fam.n + 1):
            for i in range(1, j):
                nxt = compress_ij(current, i, j)
                if nxt.mask_set() != current.mask_set():
                    current = nxt
                    changed = True
                    break
            if changed:
                break
    return current


def is_shifted(fam: Family) -> bool:
    """True iff every single-element decrement of a member is a member.

    Checks the decrement criterion, which is equivalent to closure under the
    precedence order but far cheaper than pairwise comparisons.
    """
    if fam.k is None:
        raise ValueError("is_shifted requires a uniform family")
    present = fam.mask_set()
    for m in fam.masks:
        mm = m
        while mm:
            low = mm & -mm
            mm ^= low
            x = low.bit_length()
            for y in range(1, x):
                by = 1 << (y - 1)
                if m & by:
                    continue
                if ((m & ~low) | by) not in present:
                    return False
    return True


def precedence_downset_closure(fam: Family) -> Family:
    """BFS closure of a uniform family under the precedence order.

    Oracle used to validate the decrement criterion on small instances.
    """
    if fam.k is None:
        raise ValueError("closure requires a uniform family")
    seen = set(fam.masks)
    queue = deque(fam.masks)
    while queue:
        m = queue.popleft()
        mm = m
        while mm:
            low = mm & -mm
            mm ^= low
            x = low.bit_length()
            for y in range(1, x):
                by = 1 << (y - 1)
                if m & by:
                    continue
                nxt = (m & ~low) | by
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return Family.from_masks(fam.n, fam.k, seen)


def is_precedence_closed(fam: Family) -> bool:
    """Full closure check against all preceding k-sets (quadratic oracle)."""
    from .core import enumerate_ksets

    if fam.k is None:
        raise ValueError("requires a uniform family")
    members = list(fam.members)
    for g in members:
        for f in enumerate_ksets(fam.n, fam.k):
            if precedes(f, g) and f not in fam:
                return False
    return True
