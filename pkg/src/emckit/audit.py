"""Exact-rational audits of every inequality in the proof chain.

Each audit emits :class:`AuditReport` records whose verdicts are recomputable
from the stored exact left/right sides and comparison direction.  Nothing is
evaluated in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .core import ExactScalar
from .weights import (
    WeightFrame,
    candidate_count,
    claim3_bound,
    weight_value,
    wg_envelope,
)
from .transversals import product_inequality_check

_CMP = {
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    "==": lambda a, b: a == b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}


@dataclass(frozen=True)
class AuditReport:
    claim_id: str
    params: dict
    lhs: ExactScalar
    rhs: ExactScalar
    cmp: str
    passed: bool
    witness: Optional[tuple] = None
    note: str = ""

    def recheck(self) -> bool:
        """Recompute the verdict from lhs/rhs/cmp alone."""
        return _CMP[self.cmp](self.lhs, self.rhs)


def make_report(claim_id, params, lhs, rhs, cmp, witness=None, note="") -> AuditReport:
    passed = _CMP[cmp](lhs, rhs)
    if passed and witness is None:
        w = None
    else:
        w = witness
    return AuditReport(claim_id, dict(params), lhs, rhs, cmp, passed, w, note)


class ParameterWindowError(ValueError):
    """Parameters fall outside the audited regime."""


def epsilon_of(k: int) -> Fraction:
    return Fraction(1, 100 * k)


def min_window_n(k: int, s: int) -> int:
    return (s + 1) * k


def max_window_n(k: int, s: int) -> int:
    """Largest n with n < (s+1)(k + 1/100k)."""
    num = (s + 1) * (100 * k * k + 1)
    den = 100 * k
    return (num - 1) // den  # largest integer strictly below num/den


def require_window(k: int, s: int, n: Optional[int] = None) -> None:
    if k < 5:
        raise ParameterWindowError(f"audited regime needs k >= 5, got k={k}")
    if s <= 101 * k**3:
        raise ParameterWindowError(
            f"audited regime needs s > 101k^3 = {101 * k ** 3}, got s={s}"
        )
    if n is not None and not min_window_n(k, s) <= n <= max_window_n(k, s):
        raise ParameterWindowError(
            f"n={n} outside window [{min_window_n(k, s)}, {max_window_n(k, s)}]"
        )


def audit_claim2(k: int, s: int, n: int) -> list[AuditReport]:
    """Weight bound w_{c,d} <= (1+1/k) eps^(k-d) / s^(d-c) * (k-c)!/(k-d)!.

    Includes the auxiliary chain inequality that closes the bound's proof.
    """
    require_window(k, s, n)
    eps = epsilon_of(k)
    n_bar = n - (s + 1) * k + 1
    reports = []
    for c in range(1, k + 1):
        for d in range(c, k + 1):
            lhs = weight_value(k, s, n_bar, c, d)
            rhs = (
                Fraction(k + 1, k)
                * eps ** (k - d)
                / s ** (d - c)
                * Fraction(math.factorial(k - c), math.factorial(k - d))
            )
            reports.append(
                make_report(
                    "claim2:weight_bound",
                    {"k": k, "s": s, "n": n, "c": c, "d": d},
                    lhs,
                    rhs,
                    "<=",
                )
            )
    aux_lhs = (1 - Fraction(k - 1, s)) ** (k - 1) / (
        1 + (eps + 1) / (eps * s)
    ) ** (k - 1)
    reports.append(
        make_report(
            "claim2:aux_chain",
            {"k": k, "s": s},
            aux_lhs,
            Fraction(k, k + 1),
            ">=",
        )
    )
    return reports


def audit_claim3(k: int) -> list[AuditReport]:
    """Candidate counts against C(k,c) k^(2d-c)/(d-c)!, by full enumeration."""
    if not 3 <= k <= 5:
        raise ValueError("enumeration supported for 3 <= k <= 5")
    frame = WeightFrame((k + 1) * k, k, k)  # local universe depends only on k
    reports = []
    for c in range(1, k + 1):
        for d in range(c, k + 1):
            reports.append(
                make_report(
                    "claim3:count_bound",
                    {"k": k, "c": c, "d": d},
                    candidate_count(c, d, frame),
                    claim3_bound(c, d, k),
                    "<=",
                )
            )
    return reports


def audit_claim4(k: int, s: int, n: int) -> list[AuditReport]:
    """Envelope of weighted defect mass per defect level, plus the closing lemma."""
    require_window(k, s, n)
    frame = WeightFrame(n, k, s)
    reports = []
    for g in range(0, k - 1):
        lhs, rhs, _ = wg_envelope(frame, g)
        reports.append(
            make_report(
                "claim4:wg_envelope",
                {"k": k, "s": s, "n": n, "g": g},
                lhs,
                rhs,
                "<=",
                note="envelope",
            )
        )
    eps = epsilon_of(k)
    closing_lhs = (
        Fraction(k + 1, k) / (1 - eps) / (1 - Fraction(k * k, s))
    )
    reports.append(
        make_report(
            "claim4:closing_lemma",
            {"k": k, "s": s},
            closing_lhs,
            Fraction(k + 2, k),
            "<",
        )
    )
    return reports


def _r_shape_envelope_count(k: int) -> int:
    """Brute-force count of size-(k-1), width-(k-2) local subsets meeting
    the distinguished set."""
    u = k * k + k - 1
    labels = [i // k + 1 for i in range(k * k)] + [0] * (k - 1)
    count = 0
    for combo in combinations(range(u), k - 1):
        labs = [labels[i] for i in combo]
        if 0 not in labs:
            continue
        if len(set(labs) - {0}) == k - 2:
            count += 1
    return count


def audit_numeric_lemmas(k: int, s: int) -> list[AuditReport]:
    """The interstitial exact-rational lemmas of the proof chain."""
    if k < 5:
        raise ParameterWindowError(f"audited regime needs k >= 5, got k={k}")
    if s <= 101 * k**3:
        raise ParameterWindowError(f"audited regime needs s > 101k^3, got s={s}")
    eps = epsilon_of(k)
    reports = []

    # defect-one weight sum: (1+1/k) sum_{d=2}^{k-1} eps^(k-d-1) (k-d+1) <= 2(1+2/k)
    rx_lhs = Fraction(k + 1, k) * sum(
        eps ** (k - d - 1) * (k - d + 1) for d in range(2, k)
    )
    reports.append(
        make_report(
            "lemma:rx_weight_sum", {"k": k}, rx_lhs, 2 * Fraction(k + 2, k), "<="
        )
    )

    # missing full transversals stay below (k-1)^(k-1)
    reports.append(
        make_report(
            "lemma:full_missing_threshold",
            {"k": k},
            Fraction(k + 2, k) * k**k * eps,
            (k - 1) ** (k - 1),
            "<",
        )
    )

    # defect-one mass threshold below (k-2)^(k-1)
    reports.append(
        make_report(
            "lemma:w1_threshold",
            {"k": k, "s": s},
            Fraction(k + 2, k) * k ** (k + 2) * eps / s,
            (k - 2) ** (k - 1),
            "<",
        )
    )

    # rearrangement constant behind x_{k-1} <= (1+3/k) eps k^(k+1)
    rearrange_lhs = Fraction(k + 2, k) / (1 - eps * Fraction(k + 2, k))
    reports.append(
        make_report(
            "lemma:x_rearrangement",
            {"k": k},
            rearrange_lhs,
            Fraction(k + 3, k),
            "<=",
        )
    )

    # shift-count inequality: (1-1/k)^((k^2-k)/(k-3)) k^(k+1) > 3k (1+3/k) 2 eps k^(k+1)
    if k <= 3:
        raise ParameterWindowError("shift-count lemma needs k >= 4")
    exp_frac = Fraction(k * k - k, k - 3)
    exponent = int(exp_frac) if exp_frac.denominator == 1 else math.ceil(exp_frac)
    note = "" if exp_frac.denominator == 1 else "fractional exponent rounded up (conservative)"
    shift_lhs = Fraction(k - 1, k) ** exponent * k ** (k + 1)
    shift_rhs = 3 * k * Fraction(k + 3, k) * 2 * eps * k ** (k + 1)
    reports.append(
        make_report(
            "lemma:shift_count", {"k": k, "s": s}, shift_lhs, shift_rhs, ">", note=note
        )
    )

    # envelope for r_{k-1}: brute-force count vs (k-1)^2 k^(k-1) / 2
    if k <= 5:
        reports.append(
            make_report(
                "lemma:r_count_envelope",
                {"k": k},
                _r_shape_envelope_count(k),
                Fraction((k - 1) ** 2 * k ** (k - 1), 2),
                "<=",
                note="envelope",
            )
        )

    # final threshold: (1+2/k) k^(k+6) eps / (6 s^2) < k^(k-1)
    reports.append(
        make_report(
            "lemma:final_threshold",
            {"k": k, "s": s},
            Fraction(k + 2, k) * k ** (k + 6) * eps / (6 * s**2),
            k ** (k - 1),
            "<",
        )
    )
    return reports


def audit_all(k: int, s: int, n: int) -> list[AuditReport]:
    """Every claim audit at one parameter point, plus the product inequality."""
    require_window(k, s, n)
    reports = []
    reports.extend(audit_claim2(k, s, n))
    if k <= 5:
        reports.extend(audit_claim3(k))
    reports.extend(audit_claim4(k, s, n))
    reports.extend(audit_numeric_lemmas(k, s))
    ok = product_inequality_check(k)
    reports.append(
        make_report(
            "claim8:product_inequality",
            {"k": k},
            0 if ok else 1,
            0,
            "==",
            note="0 = number of violating profiles",
        )
    )
    return reports


def overall_pass(reports: list[AuditReport]) -> bool:
    return all(r.passed for r in reports)
