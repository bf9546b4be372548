from __future__ import annotations

from fractions import Fraction

import pytest

from emckit.audit import (
    AuditReport,
    ParameterWindowError,
    audit_all,
    audit_claim2,
    audit_claim3,
    audit_claim4,
    audit_numeric_lemmas,
    epsilon_of,
    make_report,
    max_window_n,
    min_window_n,
    overall_pass,
    require_window,
)

K5_S = 101 * 5**3 + 1
K6_S = 101 * 6**3 + 1


def test_make_report_and_recheck():
    r = make_report("x", {"k": 5}, Fraction(1, 3), Fraction(1, 2), "<=")
    assert r.passed and r.recheck()
    r2 = make_report("x", {}, 2, 1, "<")
    assert not r2.passed and not r2.recheck()
    assert make_report("x", {}, 1, 1, "==").passed
    with pytest.raises(KeyError):
        make_report("x", {}, 1, 1, "!=").recheck()


def test_window_endpoints():
    k, s = 5, K5_S
    lo, hi = min_window_n(k, s), max_window_n(k, s)
    assert lo == (s + 1) * k
    # hi is the largest integer strictly below (s+1)(k + eps)
    eps = epsilon_of(k)
    assert Fraction(hi) < (s + 1) * (k + eps)
    assert Fraction(hi + 1) >= (s + 1) * (k + eps)
    require_window(k, s, lo)
    require_window(k, s, hi)
    with pytest.raises(ParameterWindowError):
        require_window(k, s, lo - 1)
    with pytest.raises(ParameterWindowError):
        require_window(k, s, hi + 1)


def test_window_parameter_guards():
    with pytest.raises(ParameterWindowError):
        require_window(4, 10**7)
    with pytest.raises(ParameterWindowError):
        require_window(5, 101 * 125)  # needs strict inequality


def test_claim2_reports_exact_and_pass():
    reports = audit_claim2(5, K5_S, min_window_n(5, K5_S))
    assert overall_pass(reports)
    weight_reports = [r for r in reports if r.claim_id == "claim2:weight_bound"]
    assert len(weight_reports) == sum(1 for c in range(1, 6) for d in range(c, 6))
    for r in weight_reports:
        assert isinstance(r.lhs, (int, Fraction))
        assert r.recheck()
    assert any(r.claim_id == "claim2:aux_chain" for r in reports)


@pytest.mark.parametrize("k", [3, 4])
def test_claim3_enumerated_counts_pass(k):
    reports = audit_claim3(k)
    assert overall_pass(reports)
    assert len(reports) == sum(1 for c in range(1, k + 1) for d in range(c, k + 1))


def test_claim3_k_guard():
    with pytest.raises(ValueError):
        audit_claim3(6)


def test_claim4_pass():
    reports = audit_claim4(5, K5_S, max_window_n(5, K5_S))
    assert overall_pass(reports)
    envs = [r for r in reports if r.claim_id == "claim4:wg_envelope"]
    assert [r.params["g"] for r in envs] == list(range(0, 4))


def test_numeric_lemmas_pass():
    for k, s in [(5, K5_S), (6, K6_S)]:
        reports = audit_numeric_lemmas(k, s)
        assert overall_pass(reports)
        ids = {r.claim_id for r in reports}
        assert "lemma:shift_count" in ids
        assert "lemma:final_threshold" in ids
        # brute-force envelope count only at enumerable k
        assert ("lemma:r_count_envelope" in ids) == (k <= 5)


def test_audit_all_shape():
    k, s = 5, K5_S
    reports = audit_all(k, s, min_window_n(k, s))
    assert overall_pass(reports)
    assert reports[-1].claim_id == "claim8:product_inequality"
    # verdicts are recomputable from the stored exact sides
    assert all(r.recheck() == r.passed for r in reports)


def test_audit_all_rejects_out_of_window():
    with pytest.raises(ParameterWindowError):
        audit_all(5, K5_S, min_window_n(5, K5_S) - 1)


def test_report_is_frozen():
    r = make_report("x", {}, 1, 2, "<")
    with pytest.raises(AttributeError):
        r.lhs = 5  # type: ignore[misc]
    assert isinstance(r, AuditReport)
