"""Desk-scale exact verification of the extremal inequality and the search
for the distinguished pivot set.

The maximization is over families of k-sets with matching number at most s.
Three methods: plain exhaustive enumeration over all subfamilies, a
branch-and-bound over inclusion decisions, and a restriction to precedence
downsets (valid by the shifting reduction, cross-checked empirically).
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional

from .audit import AuditReport, make_report
from .constructions import extremal_sizes, prefix_size, trace_of
from .core import Family, KSet, binom, enumerate_ksets
from .matching import BudgetExceeded

DEFAULT_EXHAUSTIVE_CAP = 24
DEFAULT_BNB_CAP = 60


def _family_mask_better(a: int, b: int) -> bool:
    """True if inclusion mask a denotes a colex-smaller family than b (equal sizes)."""
    diff = a ^ b
    if not diff:
        return False
    low = diff & -diff
    return bool(a & low)


def _disjoint_tuples(masks: list[int], t: int) -> list[int]:
    """Inclusion masks (over list positions) of all t-tuples of pairwise
    disjoint sets."""
    out = []

    def rec(start: int, used: int, chosen: int, depth: int):
        if depth == t:
            out.append(chosen)
            return
        for i in range(start, len(masks) - (t - depth) + 1):
            if masks[i] & used:
                continue
            rec(i + 1, used | masks[i], chosen | (1 << i), depth + 1)

    rec(0, 0, 0, 0)
    return out


def _has_matching(masks: list[int], t: int, forbidden_overlap: int = 0) -> bool:
    """Does the list contain t pairwise disjoint sets (avoiding the given bits)?"""
    if t == 0:
        return True
    pool = [m for m in masks if not m & forbidden_overlap]

    def rec(idx: int, used: int, need: int) -> bool:
        if need == 0:
            return True
        if len(pool) - idx < need:
            return False
        for i in range(idx, len(pool)):
            if pool[i] & used:
                continue
            if rec(i + 1, used | pool[i], need - 1):
                return True
        return False

    return rec(0, 0, t)


def _exhaustive_max(all_masks: list[int], s: int) -> tuple[int, int]:
    """Scan all 2^m subfamilies; returns (max size, best inclusion mask)."""
    m = len(all_masks)
    forbidden = _disjoint_tuples(all_masks, s + 1)
    best_size = -1
    best_incl = 0
    for incl in range(1 << m):
        size = incl.bit_count()
        if size < best_size:
            continue
        if any(incl & f == f for f in forbidden):
            continue
        if size > best_size or _family_mask_better(incl, best_incl):
            best_size = size
            best_incl = incl
    return best_size, best_incl


def _bnb_max(all_masks: list[int], s: int, node_budget: Optional[int]) -> tuple[int, int]:
    """Branch-and-bound over inclusion decisions in colex order.

    Include-first DFS makes the first maximizer found the colex-least one;
    individually infeasible sets are dropped from the undecided pool, which
    tightens the size bound.
    """
    best_size = -1
    best_incl = 0
    nodes = 0

    def feasible(cur: list[int], cand: int) -> bool:
        # adding cand keeps the matching number <= s iff there is no
        # s-matching among current members disjoint from cand
        return not _has_matching(cur, s, forbidden_overlap=cand)

    def rec(undecided: list[int], cur: list[int], incl: int):
        nonlocal best_size, best_incl, nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise BudgetExceeded(f"max_family_size: node budget {node_budget} exhausted")
        if len(cur) > best_size:
            best_size = len(cur)
            best_incl = incl
        if not undecided or len(cur) + len(undecided) <= best_size:
            return
        i, cand = undecided[0]
        rest = undecided[1:]
        if feasible(cur, cand):
            kept = [(j, m) for j, m in rest if feasible(cur + [cand], m)]
            rec(kept, cur + [cand], incl | (1 << i))
        rec(rest, cur, incl)

    start = [(i, m) for i, m in enumerate(all_masks)]
    rec(start, [], 0)
    return best_size, best_incl


def _single_decrement_parents(mask: int, n: int) -> list[int]:
    out = []
    mm = mask
    while mm:
        low = mm & -mm
        mm ^= low
        x = low.bit_length()
        for y in range(1, x):
            by = 1 << (y - 1)
            if not mask & by:
                out.append((mask & ~low) | by)
    return out


def _downset_max(all_masks: list[int], s: int, node_budget: Optional[int]) -> tuple[int, int]:
    """Maximize over precedence downsets only.

    A downset is closed under single-element decrements; the colex list is a
    linear extension, so parents are always decided before their children.
    """
    n_bits = max((m.bit_length() for m in all_masks), default=0)
    rank = {m: i for i, m in enumerate(all_masks)}
    parents = [
        [rank[p] for p in set(_single_decrement_parents(m, n_bits))]
        for m in all_masks
    ]
    best_size = -1
    best_incl = 0
    nodes = 0

    def rec(idx: int, included: int, cur: list[int]):
        nonlocal best_size, best_incl, nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise BudgetExceeded(f"max_family_size: node budget {node_budget} exhausted")
        if len(cur) > best_size:
            best_size = len(cur)
            best_incl = included
        if idx == len(all_masks):
            return
        if len(cur) + (len(all_masks) - idx) <= best_size:
            return
        m = all_masks[idx]
        can_include = all(included >> p & 1 for p in parents[idx]) and not _has_matching(
            cur, s, forbidden_overlap=m
        )
        if can_include:
            rec(idx + 1, included | (1 << idx), cur + [m])
        rec(idx + 1, included, cur)

    rec(0, 0, [])
    return best_size, best_incl


def max_family_size(
    n: int,
    k: int,
    s: int,
    method: str = "bnb",
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
    bnb_cap: int = DEFAULT_BNB_CAP,
    node_budget: Optional[int] = None,
) -> tuple[int, Family]:
    """Exact maximum size of a k-uniform family on [n] with matching number <= s.

    Returns the maximum together with a deterministic witness (colex-least
    among maximizers).  Raises :class:`BudgetExceeded` when a node budget is
    given and exhausted -- an explicit unknown, never a wrong answer.
    """
    if not (n >= k >= 1 and s >= 1):
        raise ValueError("need n >= k >= 1 and s >= 1")
    all_masks = [t.mask for t in enumerate_ksets(n, k)]
    m = len(all_masks)
    if method == "exhaustive":
        if m > exhaustive_cap:
            raise ValueError(
                f"exhaustive search needs C(n,k) <= {exhaustive_cap}, got {m}"
            )
        best_size, best_incl = _exhaustive_max(all_masks, s)
    elif method == "bnb":
        if m > bnb_cap:
            raise ValueError(f"branch-and-bound needs C(n,k) <= {bnb_cap}, got {m}")
        best_size, best_incl = _bnb_max(all_masks, s, node_budget)
    elif method == "shifted_only":
        if m > bnb_cap:
            raise ValueError(f"downset search needs C(n,k) <= {bnb_cap}, got {m}")
        best_size, best_incl = _downset_max(all_masks, s, node_budget)
    else:
        raise ValueError(f"unknown method {method!r}")
    witness = Family.from_masks(
        n, k, [mm for i, mm in enumerate(all_masks) if best_incl >> i & 1]
    )
    return best_size, witness


def verify_conjecture(
    n: int, k: int, s: int, method: str = "bnb", node_budget: Optional[int] = None
) -> AuditReport:
    """Check that the exact maximum equals the larger of the two candidates."""
    maximum, witness = max_family_size(n, k, s, method=method, node_budget=node_budget)
    size_a, size_b = extremal_sizes(n, k, s)
    return make_report(
        "conjecture:extremal_bound",
        {"n": n, "k": k, "s": s, "method": method, "size_a": size_a, "size_b": size_b},
        maximum,
        max(size_a, size_b),
        "==",
        witness=tuple(t.elements for t in witness.members) if maximum != max(size_a, size_b) else None,
    )


def find_G0(fam: Family, k: int, s: int) -> Optional[KSet]:
    """Colex-least (k-1)-subset of the prefix, outside the trace, with the
    pivot property: for every member disjoint from it, adjoining the member's
    minimal element gives a member.  Returns None if no such set exists."""
    p = prefix_size(k, s)
    if fam.n < p:
        raise ValueError("family ground set smaller than prefix")
    tr_masks = trace_of(fam, k, s).mask_set() if len(fam) else frozenset()
    fam_masks = fam.mask_set()
    members = fam.masks
    for cand in enumerate_ksets(p, k - 1):
        cmask = cand.mask
        if cmask in tr_masks:
            continue
        ok = True
        for m in members:
            if m & cmask:
                continue
            b = (m & -m).bit_length()
            if (cmask | (1 << (b - 1))) not in fam_masks:
                ok = False
                break
        if ok:
            return cand.with_ground(fam.n)
    return None


def erdos_gallai_max(n: int, s: int) -> int:
    """Literature closed form for k = 2: max(C(2s+1, 2), C(s,2) + s(n-s)).

    Test oracle only; validated against exhaustive search before use.
    """
    if n < 2 * (s + 1):
        raise ValueError("need n >= 2(s+1)")
    return max(binom(2 * s + 1, 2), binom(s, 2) + s * (n - s))
