# analysis/verification_service.py
# Điều phối các bộ chứng nhận của lệnh verify: sinh trường hợp, chạy song song, ngân sách thời gian
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable

from core.config import Config, log
from core.errors import BudgetExceeded, DomainError
from core.ringcore import CoeffRing
from analysis.orbitring import multidegrees_up_to
from analysis.presentation import (
    RankCertificate,
    certify_basis,
    certify_freeness,
    certify_generation_piece,
    certify_presentation,
    certify_product_formula,
    certify_projection,
    certify_rational_generation,
    certify_relation_span,
    certify_rewrite,
    generation_bound,
    generation_sharpness,
)

SUITES = ("basis", "product", "rewrite", "relations", "presentation",
          "degree-bound", "freeness", "projection", "rational")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2
EXIT_BUDGET = 3


@dataclass
class Case:
    """Một trường hợp chứng nhận: nhãn để báo cáo và hàm tính chứng nhận."""
    label: str
    run: Callable[[], RankCertificate]
    placeholder: RankCertificate


@dataclass
class VerificationReport:
    suite: str
    coeff: str
    certificates: list[RankCertificate] = field(default_factory=list)
    budget_exceeded: bool = False
    sharpness: int | None = None
    bound: int | None = None

    def count(self, verdict: str) -> int:
        return sum(1 for c in self.certificates if c.verdict == verdict)

    @property
    def exit_code(self) -> int:
        if self.count("fail"):
            return EXIT_FAILED
        if self.budget_exceeded:
            return EXIT_BUDGET
        return EXIT_OK

    def summary_lines(self) -> list[str]:
        lines = [f"SUMMARY {self.suite} coeff={self.coeff}: {self.count('pass')} pass, "
                 f"{self.count('fail')} fail, {self.count('skip')} skip"]
        if self.sharpness is not None:
            lines.append(f"SHARPNESS minimal generator degree {self.sharpness} (bound {self.bound})")
        if self.budget_exceeded:
            lines.append("BUDGET exceeded; remaining cases skipped")
        return lines

    def summary_record(self) -> dict:
        record = {
            "kind": "summary",
            "suite": self.suite,
            "coeff": self.coeff,
            "pass": str(self.count("pass")),
            "fail": str(self.count("fail")),
            "skip": str(self.count("skip")),
            "budget_exceeded": self.budget_exceeded,
            "exit_code": str(self.exit_code),
        }
        if self.sharpness is not None:
            record["sharpness"] = str(self.sharpness)
            record["bound"] = str(self.bound)
        return record


class VerificationService:
    """
    Dịch vụ chạy một bộ chứng nhận trên mọi (n, m, a) trong phạm vi.

    Các trường hợp được chạy trên một ThreadPoolExecutor; kết quả luôn được báo cáo
    theo thứ tự trường hợp, bất kể thứ tự hoàn thành. Khi một trường hợp vượt ngân sách,
    mọi trường hợp đứng sau nó được đánh dấu "skip".
    Ngân sách chỉ được kiểm tra sau khi một trường hợp chạy xong: luồng Python không thể
    bị ngắt giữa chừng, nên trường hợp đang chạy luôn chạy đến hết.
    """

    def __init__(self, coeff: CoeffRing, n: int | None, m: int, maxdeg: int = 6,
                 budget: float | None = None, workers: int | None = None,
                 seed: int | None = None, probe_limit: int | None = None,
                 pairs: int | None = None):
        self.coeff = coeff
        self.n = n
        self.m = m
        self.maxdeg = maxdeg
        self.budget = Config.CASE_BUDGET_SECONDS if budget is None else budget
        self.workers = max(1, Config.WORKERS if workers is None else workers)
        self.seed = Config.PROBE_SEED if seed is None else seed
        self.probe_limit = Config.PROBE_LIMIT if probe_limit is None else probe_limit
        self.pairs = Config.PRODUCT_PAIRS if pairs is None else pairs

    # ========== SINH TRƯỜNG HỢP ==========

    def _need_n(self, suite: str) -> int:
        if self.n is None or self.n < 1:
            raise DomainError(f"suite '{suite}' needs --n >= 1")
        return self.n

    def _placeholder(self, check: str, n: int | None, a: tuple[int, ...] | None, m: int | None = None,
                     coeff: str | None = None) -> RankCertificate:
        return RankCertificate(check, n, self.m if m is None else m, a,
                               coeff or self.coeff.spec, verdict="skip")

    def cases(self, suite: str) -> list[Case]:
        if suite not in SUITES:
            raise DomainError(f"unknown suite '{suite}' (expected one of {', '.join(SUITES)})")
        m, coeff = self.m, self.coeff
        if m < 1:
            raise DomainError("--m must be >= 1")
        degrees = multidegrees_up_to(m, self.maxdeg)
        cases: list[Case] = []

        if suite == "product":
            for arity in range(1, m + 1):
                cases.append(Case(f"product m={arity}",
                                  partial(certify_product_formula, arity, self.pairs, self.seed),
                                  self._placeholder("product", None, None, arity, "z")))
            return cases

        if suite == "freeness":
            for a in degrees:
                cases.append(Case(f"freeness a={a}", partial(certify_freeness, m, a),
                                  self._placeholder("freeness", None, a, coeff="z")))
            return cases

        n = self._need_n(suite)
        if suite == "projection":
            for h in range(2, n + 1):
                for small in range(1, h):
                    for a in degrees:
                        cases.append(Case(f"projection n={small} h={h} a={a}",
                                          partial(certify_projection, small, h, m, a),
                                          self._placeholder("projection", small, a, coeff="z")))
            return cases

        for a in degrees:
            if suite == "basis":
                cases.append(Case(f"basis a={a}", partial(certify_basis, n, m, a, coeff),
                                  self._placeholder("basis", n, a)))
            elif suite == "rewrite":
                cases.append(Case(f"rewrite a={a}", partial(certify_rewrite, n, m, a),
                                  self._placeholder("rewrite", n, a, coeff="z")))
            elif suite == "relations":
                for k in range(n + 1, sum(a) + 1):
                    cases.append(Case(f"relations a={a} k={k}",
                                      partial(certify_relation_span, n, m, a, k, coeff,
                                              self.seed, self.probe_limit),
                                      self._placeholder("relations", n, a)))
            elif suite == "presentation":
                cases.append(Case(f"presentation a={a}",
                                  partial(certify_presentation, n, m, a, coeff, self.seed, self.probe_limit),
                                  self._placeholder("presentation", n, a)))
            elif suite == "degree-bound":
                cases.append(Case(f"degree-bound a={a}", partial(certify_generation_piece, n, m, a, coeff),
                                  self._placeholder("degree-bound", n, a)))
            elif suite == "rational":
                cases.append(Case(f"rational a={a}", partial(certify_rational_generation, n, m, a),
                                  self._placeholder("rational", n, a, coeff="q")))
        return cases

    # ========== CHẠY ==========

    def _check_budget(self, case: Case, cert: RankCertificate) -> None:
        if self.budget > 0 and cert.elapsed > self.budget:
            raise BudgetExceeded(f"{case.label} took {cert.elapsed:.1f}s (budget {self.budget:g}s)")

    def run(self, suite: str) -> VerificationReport:
        """
        Chạy toàn bộ bộ chứng nhận `suite`.

        Returns:
            VerificationReport với các chứng nhận theo thứ tự trường hợp
        """
        cases = self.cases(suite)
        report = VerificationReport(suite, self.coeff.spec)
        log("Verify", f"Bộ {suite}: {len(cases)} trường hợp, {self.workers} luồng, ngân sách {self.budget:g}s/trường hợp")

        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            futures = [pool.submit(case.run) for case in cases]
            for case, future in zip(cases, futures):
                if report.budget_exceeded:
                    future.cancel()
                    report.certificates.append(case.placeholder)
                    continue
                cert = future.result()
                report.certificates.append(cert)
                if not cert.passed:
                    log("Verify", f"FAIL {case.label}")
                try:
                    self._check_budget(case, cert)
                except BudgetExceeded as e:
                    log("Verify", f"Vượt ngân sách: {e}")
                    report.budget_exceeded = True
                    for later in futures:
                        later.cancel()

        if suite == "degree-bound":
            report.sharpness = generation_sharpness(report.certificates)
            report.bound = generation_bound(self.n, self.m)
        log("Verify", report.summary_lines()[0])
        return report
