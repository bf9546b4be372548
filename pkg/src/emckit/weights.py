"""Width/weight calculus over a fixed prefix partition.

A frame fixes the proof context: parameters (n, k, s), a partition of the
prefix [(s+1)k-1] into a distinguished (k-1)-set and s blocks of size k, and
a selected k-subset M of block indices.  Widths count blocks met; weights are
the exact rationals C(n_bar, k-d) / C(s-c, k-c).

Frames come in two validity levels.  A *partition frame* (any partition of
the prefix) suffices for the bookkeeping identities.  An *anchored frame*
additionally certifies that the blocks belong to the trace of a concrete
family and the distinguished set has the pivot property; the transversal
arguments need that level.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterable, Optional

from .core import ExactScalar, Family, KSet, binom
from .constructions import prefix_size, trace_of

ENUMERATION_CAP = 5_000_000


class EnumerationInfeasible(RuntimeError):
    """An exact enumeration would exceed the configured subset cap."""


class WeightFrame:
    """Parameters plus a prefix partition and a selected index set M.

    With no explicit partition the canonical layout is used: block i is
    {(i-1)k+1, ..., ik} and the distinguished set is the tail
    {sk+1, ..., (s+1)k-1}.  The canonical layout is evaluated arithmetically,
    so frames with astronomically large s never materialize bit-vectors.
    """

    __slots__ = ("n", "k", "s", "m_indices", "_g0", "_blocks", "anchored")

    def __init__(
        self,
        n: int,
        k: int,
        s: int,
        m_indices: Optional[Iterable[int]] = None,
        g0: Optional[tuple[int, ...]] = None,
        blocks: Optional[tuple[tuple[int, ...], ...]] = None,
        anchored: bool = False,
    ):
        if k < 1 or s < k:
            raise ValueError("need 1 <= k <= s")
        if n < (s + 1) * k - 1:
            raise ValueError("need n >= (s+1)k - 1")
        self.n = n
        self.k = k
        self.s = s
        m = tuple(sorted(m_indices)) if m_indices is not None else tuple(range(1, k + 1))
        if len(m) != k or len(set(m)) != k or not all(1 <= i <= s for i in m):
            raise ValueError("M must be a k-subset of [s]")
        self.m_indices = m
        if (g0 is None) != (blocks is None):
            raise ValueError("give both g0 and blocks, or neither")
        if g0 is not None:
            g0 = tuple(sorted(g0))
            blocks = tuple(tuple(sorted(b)) for b in blocks)
            self._validate_partition(g0, blocks)
        self._g0 = g0
        self._blocks = blocks
        self.anchored = anchored

    def _validate_partition(self, g0, blocks):
        p = prefix_size(self.k, self.s)
        if len(g0) != self.k - 1:
            raise ValueError("distinguished set must have size k-1")
        if len(blocks) != self.s or any(len(b) != self.k for b in blocks):
            raise ValueError(f"need {self.s} blocks of size {self.k}")
        all_elems = list(g0) + [e for b in blocks for e in b]
        if sorted(all_elems) != list(range(1, p + 1)):
            raise ValueError("distinguished set and blocks must partition the prefix")

    # -- layout ----------------------------------------------------------

    @property
    def epsilon(self) -> Fraction:
        return Fraction(1, 100 * self.k)

    @property
    def n_bar(self) -> int:
        return self.n - (self.s + 1) * self.k + 1

    @property
    def prefix(self) -> int:
        return prefix_size(self.k, self.s)

    def block_index(self, e: int) -> int:
        """Index in [s] of the block containing element e; 0 for the distinguished set."""
        if not 1 <= e <= self.prefix:
            raise ValueError(f"element {e} outside prefix [1, {self.prefix}]")
        if self._blocks is None:
            return 0 if e > self.s * self.k else (e - 1) // self.k + 1
        for i, b in enumerate(self._blocks, start=1):
            if e in b:
                return i
        return 0

    def g0_elements(self) -> tuple[int, ...]:
        if self._g0 is not None:
            return self._g0
        return tuple(range(self.s * self.k + 1, self.prefix + 1))

    def block_elements(self, i: int) -> tuple[int, ...]:
        if not 1 <= i <= self.s:
            raise ValueError("block index outside [1, s]")
        if self._blocks is not None:
            return self._blocks[i - 1]
        return tuple(range((i - 1) * self.k + 1, i * self.k + 1))

    def b_blocks(self) -> list[tuple[int, ...]]:
        """The selected blocks B_1..B_k, in M order."""
        return [self.block_elements(i) for i in self.m_indices]

    def gm_elements(self) -> tuple[int, ...]:
        """The local universe: distinguished set plus the k selected blocks."""
        elems = list(self.g0_elements())
        for b in self.b_blocks():
            elems.extend(b)
        return tuple(sorted(elems))

    def gm_kset(self) -> KSet:
        return KSet.from_elements(self.prefix, self.gm_elements())

    def with_m(self, m_indices: Iterable[int]) -> "WeightFrame":
        return WeightFrame(
            self.n, self.k, self.s, m_indices, self._g0, self._blocks, self.anchored
        )

    def check_invariants(self) -> None:
        assert len(self.gm_elements()) == self.k * self.k + self.k - 1
        assert self.n_bar >= 0

    # -- anchoring -------------------------------------------------------

    def anchor(self, fam: Family) -> "WeightFrame":
        """Verify the frame against a family and mark it anchored.

        Requires every block to be a trace member and the distinguished set
        to be outside the trace with the pivot property: for every member
        disjoint from it, adjoining the member's minimum gives a member.
        """
        tr = trace_of(fam, self.k, self.s)
        tr_masks = tr.mask_set()
        for i in range(1, self.s + 1):
            bmask = _mask_of(self.block_elements(i))
            if bmask not in tr_masks:
                raise ValueError(f"block {i} is not a trace member")
        g0 = _mask_of(self.g0_elements())
        if g0 in tr_masks:
            raise ValueError("distinguished set must not be a trace member")
        fam_masks = fam.mask_set()
        for m in fam.masks:
            if m & g0:
                continue
            b = (m & -m).bit_length()
            if (g0 | (1 << (b - 1))) not in fam_masks:
                raise ValueError("pivot property fails for the distinguished set")
        return WeightFrame(
            self.n, self.k, self.s, self.m_indices, self._g0, self._blocks, anchored=True
        )

    def __repr__(self) -> str:
        return (
            f"WeightFrame(n={self.n}, k={self.k}, s={self.s}, "
            f"M={self.m_indices}, anchored={self.anchored})"
        )


def _mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def width(t: KSet, frame: WeightFrame) -> int:
    """Number of blocks (indices in [s]) met by a prefix subset."""
    if any(e > frame.prefix for e in t.elements):
        raise ValueError("set extends beyond the prefix")
    return len({frame.block_index(e) for e in t.elements} - {0})


def weight_value(k: int, s: int, n_bar: int, c: int, d: int) -> Fraction:
    """The exact weight C(n_bar, k-d) / C(s-c, k-c) of a width-c, size-d set."""
    if not 1 <= c <= d <= k:
        raise ValueError("need 1 <= c <= d <= k")
    if s - c < k - c:
        raise ValueError("need s >= k")
    return Fraction(binom(n_bar, k - d), binom(s - c, k - c))


def weight_cd(c: int, d: int, frame: WeightFrame) -> Fraction:
    return weight_value(frame.k, frame.s, frame.n_bar, c, d)


def _width_zero_weight(frame: WeightFrame, d: int) -> Fraction:
    # sets inside the distinguished set: multiplier C(s,k), weight C(n_bar,k-d)/C(s,k)
    return Fraction(binom(frame.n_bar, frame.k - d), binom(frame.s, frame.k))


def family_weight_identity(
    fam: Family, frame: WeightFrame, direct_limit: int = 400
) -> tuple[Fraction, int, bool]:
    """Double-counting identity: total weighted trace mass equals the family size.

    The reduced sum weighs each trace member by the number of index sets M
    whose local universe contains it.  When C(s, k) <= ``direct_limit`` the
    direct sum over all M is evaluated as well and must agree exactly.
    """
    k, s = frame.k, frame.s
    tr = trace_of(fam, k, s)
    lhs = Fraction(0)
    for t in tr.members:
        d = t.size
        v = width(t, frame)
        if v == 0:
            lhs += binom(s, k) * _width_zero_weight(frame, d)
        else:
            lhs += binom(s - v, k - v) * weight_cd(v, d, frame)
    rhs = len(fam)
    if binom(s, k) <= direct_limit:
        direct = Fraction(0)
        for m_combo in combinations(range(1, s + 1), k):
            sub = frame.with_m(m_combo)
            gm = _mask_of(sub.gm_elements())
            for t in tr.members:
                if t.mask & ~gm:
                    continue
                d, v = t.size, width(t, sub)
                if v == 0:
                    direct += _width_zero_weight(sub, d)
                else:
                    direct += weight_cd(v, d, sub)
        if direct != lhs:
            raise RuntimeError(
                f"direct M-sum {direct} disagrees with reduced sum {lhs}"
            )
    return lhs, rhs, lhs == rhs


def wA_of_M(frame: WeightFrame) -> Fraction:
    """Weighted count of all k-subsets of the local universe.

    By symmetry over M, C(s, k) times this value is the size of the prefix
    candidate family.
    """
    k = frame.k
    elems = frame.gm_elements()
    block_of = {e: frame.block_index(e) for e in elems}
    total = Fraction(0)
    for combo in combinations(elems, k):
        v = len({block_of[e] for e in combo} - {0})
        total += weight_value(k, frame.s, frame.n_bar, v, k)
    return total


@lru_cache(maxsize=None)
def _candidate_counts(k: int, d: int) -> dict[int, int]:
    """Exact counts, by width c, of all size-d subsets of the local universe.

    The local universe has k^2 + k - 1 elements: k blocks of size k plus the
    distinguished (k-1)-set (label 0).  Counts depend only on k and d.
    """
    u = k * k + k - 1
    if binom(u, d) > ENUMERATION_CAP:
        raise EnumerationInfeasible(
            f"C({u},{d}) = {binom(u, d)} subsets exceeds cap {ENUMERATION_CAP}"
        )
    labels = [i // k + 1 for i in range(k * k)] + [0] * (k - 1)
    counts: dict[int, int] = {}
    for combo in combinations(range(u), d):
        c = len({labels[i] for i in combo} - {0})
        counts[c] = counts.get(c, 0) + 1
    return counts


def candidate_count(c: int, d: int, frame: WeightFrame) -> int:
    """Brute-force count of local-universe subsets with width c and size d.

    This is an upper envelope for the corresponding per-family counts.
    """
    k = frame.k
    if d == 0:
        return 1 if c == 0 else 0
    if not 0 <= c <= d <= k:
        raise ValueError("need 0 <= c <= d <= k")
    return _candidate_counts(k, d).get(c, 0)


def claim3_bound(c: int, d: int, k: int) -> Fraction:
    """The counting bound C(k,c) * k^(2d-c) / (d-c)!."""
    if not 1 <= c <= d <= k:
        raise ValueError("need 1 <= c <= d <= k")
    return Fraction(binom(k, c) * k ** (2 * d - c), factorial(d - c))


def wg_envelope(frame: WeightFrame, g: int) -> tuple[Fraction, Fraction, bool]:
    """Family-independent envelope for the weighted mass of defect >= g.

    lhs sums weight * candidate count over widths c and sizes d < k with
    d - c >= g; rhs is the exponential-decay bound
    (1 + 2/k) * k^(k+2g) * eps / (s^g * g!).  Exact rationals throughout.
    """
    k, s, n_bar = frame.k, frame.s, frame.n_bar
    if not 0 <= g <= k - 2:
        raise ValueError("need 0 <= g <= k-2")
    lhs = Fraction(0)
    for c in range(1, k - g):
        for d in range(c + g, k):
            cnt = candidate_count(c, d, frame)
            if cnt:
                lhs += weight_value(k, s, n_bar, c, d) * cnt
    rhs = (
        Fraction(k + 2, k)
        * k ** (k + 2 * g)
        * frame.epsilon
        / (s**g * factorial(g))
    )
    return lhs, rhs, lhs <= rhs


class RxCounts:
    """Counts of defect-one trace members inside the local universe.

    ``r[d]``: size d, width d-1, meeting the distinguished set;
    ``x[d]``: size d, width d-1, avoiding it.  ``chain_ok`` records whether
    the incidence chain k(k-d+1) r_d <= d r_{d+1} holds for d = 2..k-2.
    """

    __slots__ = ("r", "x", "chain_ok")

    def __init__(self, r: dict[int, int], x: dict[int, int], chain_ok: bool):
        self.r = r
        self.x = x
        self.chain_ok = chain_ok


def rx_counts(fam: Family, frame: WeightFrame) -> RxCounts:
    k = frame.k
    tr = trace_of(fam, k, frame.s)
    gm = _mask_of(frame.gm_elements())
    g0 = _mask_of(frame.g0_elements())
    r = {d: 0 for d in range(2, k)}
    x = {d: 0 for d in range(2, k)}
    for t in tr.members:
        if t.mask & ~gm:
            continue
        d = t.size
        if d < 2 or d > k - 1:
            continue
        if width(t, frame) != d - 1:
            continue
        if t.mask & g0:
            r[d] += 1
        else:
            x[d] += 1
    chain_ok = all(k * (k - d + 1) * r[d] <= d * r[d + 1] for d in range(2, k - 1))
    return RxCounts(r, x, chain_ok)
