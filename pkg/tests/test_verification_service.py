# tests/test_verification_service.py
import pytest

from core.errors import DomainError
from core.ringcore import CoeffRing
from analysis.presentation import RankCertificate
from analysis.verification_service import (
    EXIT_BUDGET,
    EXIT_FAILED,
    EXIT_OK,
    Case,
    VerificationService,
)

QQ = CoeffRing.rationals()


def _case(label, verdict="pass", elapsed=0.0):
    cert = RankCertificate("basis", 2, 1, (len(label),), "q", verdict=verdict, elapsed=elapsed)
    placeholder = RankCertificate("basis", 2, 1, (len(label),), "q", verdict="skip")
    return Case(label, lambda: cert, placeholder)


def _service_with(monkeypatch, cases, **kwargs):
    service = VerificationService(QQ, 2, 1, **kwargs)
    monkeypatch.setattr(service, "cases", lambda suite: cases)
    return service


def test_cases_cover_every_multidegree():
    service = VerificationService(QQ, 2, 2, maxdeg=2)
    labels = [c.label for c in service.cases("basis")]
    assert len(labels) == 5
    assert len(service.cases("product")) == 2


def test_relations_cases_start_above_n():
    service = VerificationService(QQ, 2, 1, maxdeg=4)
    labels = [c.label for c in service.cases("relations")]
    assert labels == ["relations a=(3,) k=3", "relations a=(4,) k=3", "relations a=(4,) k=4"]


def test_suite_needs_n():
    with pytest.raises(DomainError):
        VerificationService(QQ, None, 2).cases("basis")
    with pytest.raises(DomainError):
        VerificationService(QQ, 2, 2).cases("nonsense")


def test_results_in_case_order(monkeypatch):
    cases = [_case("a"), _case("bb"), _case("ccc")]
    report = _service_with(monkeypatch, cases, workers=3).run("basis")
    assert [c.multidegree for c in report.certificates] == [(1,), (2,), (3,)]
    assert report.exit_code == EXIT_OK


def test_budget_skips_later_cases(monkeypatch, quiet):
    cases = [_case("a"), _case("bb", elapsed=5.0), _case("ccc")]
    report = _service_with(monkeypatch, cases, budget=1.0).run("basis")
    assert [c.verdict for c in report.certificates] == ["pass", "pass", "skip"]
    assert report.budget_exceeded
    assert report.exit_code == EXIT_BUDGET
    assert report.summary_lines()[-1] == "BUDGET exceeded; remaining cases skipped"


def test_failure_wins_over_budget(monkeypatch, quiet):
    cases = [_case("a", verdict="fail"), _case("bb", elapsed=5.0), _case("ccc")]
    report = _service_with(monkeypatch, cases, budget=1.0).run("basis")
    assert report.exit_code == EXIT_FAILED
    assert report.summary_lines()[0] == "SUMMARY basis coeff=q: 1 pass, 1 fail, 1 skip"
    assert report.summary_record()["exit_code"] == "2"
