# analysis/presentation.py
"""
Vành sinh tự do C(m) trên các ký hiệu e_{i,μ} (μ nguyên thủy), viết lại phần tử
cơ sở quỹ đạo theo các phần tử sinh, viết lại hữu tỉ theo e_1(μ), và các
chứng nhận hạng (cơ sở, span quan hệ, biểu diễn, cận bậc sinh, tính tự do).

Mọi chứng nhận trả về RankCertificate với các hạng là số nguyên chính xác.
"""
from __future__ import annotations

import random
import threading
import time
from dataclasses import dataclass, field
from functools import wraps
from itertools import product as grid_product
from typing import Callable, Iterable, Sequence

from core.errors import DomainError, MsymError
from core.ringcore import CoeffRing, FreePolynomial, Monomial, Polynomial, monomials_below
from analysis.concrete import (
    ConcretePoly,
    monomials_of_multidegree,
    orbit_sum,
    project_slots,
    symmetrize_monomial,
)
from analysis.linalg import RowSpace, rank_over, smith_normal_form, spans_lattice
from analysis.orbitring import (
    MultiSymElement,
    OrbitIndex,
    basis_product,
    enumerate_basis,
    expand_e_k_of,
    multidegrees_up_to,
    multiply,
    project_n,
    sigma,
)
from analysis.symfun import newton_e_in_p, plethysm_P

ZZ_RING = CoeffRing.integers()
QQ_RING = CoeffRing.rationals()


# ========== KÝ HIỆU SINH ==========

@dataclass(frozen=True)
class GeneratorSymbol:
    """e_{i,μ} với i >= 1 và μ nguyên thủy; ∂(e_{i,μ}) = i·∂(μ)."""
    degree: int
    base: Monomial

    def __post_init__(self):
        if self.degree < 1:
            raise DomainError(f"generator degree must be positive, got {self.degree}")
        if not self.base.is_primitive:
            raise DomainError(f"generator monomial {self.base} must be primitive")

    @property
    def multidegree(self) -> tuple[int, ...]:
        return tuple(self.degree * e for e in self.base.exponents)

    @property
    def weight(self) -> int:
        return self.degree * self.base.total_degree

    def sort_key(self) -> tuple:
        return (0, self.base.total_degree, tuple(-e for e in self.base.exponents), -self.degree)

    def to_text(self) -> str:
        return f"e[{self.degree};{self.base.to_text()}]"


@dataclass(frozen=True)
class LinearSymbol:
    """e_1(μ) với μ bậc dương bất kỳ (dùng cho viết lại hữu tỉ)."""
    base: Monomial

    def __post_init__(self):
        if self.base.is_constant:
            raise DomainError("linear generator needs a monomial of positive degree")

    degree = 1

    @property
    def multidegree(self) -> tuple[int, ...]:
        return self.base.exponents

    @property
    def weight(self) -> int:
        return self.base.total_degree

    def sort_key(self) -> tuple:
        return (1, self.base.total_degree, tuple(-e for e in self.base.exponents), -1)

    def to_text(self) -> str:
        return f"e1[{self.base.to_text()}]"


class GeneratorPoly(FreePolynomial):
    """Phần tử của C(m) ⊗ R."""
    __slots__ = ()

    @classmethod
    def symbol_key(cls, symbol) -> tuple:
        return symbol.sort_key()

    @classmethod
    def format_symbol(cls, symbol) -> str:
        return symbol.to_text()

    @classmethod
    def symbol_weight(cls, symbol) -> int:
        return symbol.weight

    @classmethod
    def unit(cls, coeff_ring: CoeffRing = ZZ_RING) -> "GeneratorPoly":
        return cls({(): 1}, coeff_ring)

    @classmethod
    def gen(cls, i: int, mu: Monomial, coeff_ring: CoeffRing = ZZ_RING) -> "GeneratorPoly":
        return cls({((GeneratorSymbol(i, mu), 1),): 1}, coeff_ring)

    @classmethod
    def linear(cls, mu: Monomial, coeff_ring: CoeffRing = ZZ_RING) -> "GeneratorPoly":
        return cls({((LinearSymbol(mu), 1),): 1}, coeff_ring)

    @staticmethod
    def key_multidegree(key, arity: int) -> tuple[int, ...]:
        total = [0] * arity
        for s, e in key:
            for i, d in enumerate(s.multidegree):
                total[i] += e * d
        return tuple(total)

    def multidegrees(self, arity: int) -> set[tuple[int, ...]]:
        return {self.key_multidegree(key, arity) for key in self._terms}


# ========== VIẾT LẠI THEO PHẦN TỬ SINH ==========

class RewriteTable:
    """Kết quả viết lại (hệ số nguyên) theo α chính tắc; đọc đồng thời, chèn có khóa."""

    def __init__(self):
        self._lock = threading.Lock()
        self._table: dict[OrbitIndex, GeneratorPoly] = {}
        self.computed = 0

    def get(self, alpha: OrbitIndex) -> GeneratorPoly | None:
        return self._table.get(alpha)

    def put(self, alpha: OrbitIndex, value: GeneratorPoly) -> GeneratorPoly:
        with self._lock:
            return self._table.setdefault(alpha, value)

    def record(self, alpha: OrbitIndex, value: GeneratorPoly) -> GeneratorPoly:
        with self._lock:
            self.computed += 1
            return self._table.setdefault(alpha, value)

    def items(self) -> list[tuple[OrbitIndex, GeneratorPoly]]:
        with self._lock:
            return sorted(self._table.items(), key=lambda kv: (kv[0].arity, kv[0].sort_key()))

    def __contains__(self, alpha) -> bool:
        return alpha in self._table

    def __len__(self) -> int:
        return len(self._table)


REWRITE_TABLE = RewriteTable()


def rewrite_to_generators(alpha: OrbitIndex, coeff_ring: CoeffRing = ZZ_RING,
                          table: RewriteTable | None = None) -> GeneratorPoly:
    """
    G với σ_m(G) = e_α trong A(∞,m). G không phụ thuộc n.

    Một đơn thức nguyên thủy cho ký hiệu e_{k,μ}; lũy thừa μ = ν^j dùng P_{k,j};
    giá đỡ nhiều phần tử tách đơn thức lớn nhất (graded-lex) rồi đệ quy.
    """
    result = _rewrite(alpha, REWRITE_TABLE if table is None else table)
    return result if coeff_ring == ZZ_RING else result.change_ring(coeff_ring)


def _rewrite(alpha: OrbitIndex, table: RewriteTable) -> GeneratorPoly:
    found = table.get(alpha)
    if found is not None:
        return found
    entries = alpha.entries
    if not entries:
        return table.record(alpha, GeneratorPoly.unit())
    if len(entries) == 1:
        mu, k = entries[0]
        nu, j = mu.primitive_root()
        if j == 1:
            return table.record(alpha, GeneratorPoly.gen(k, mu))
        P = plethysm_P(k, j)
        return table.record(alpha, P.evaluate(lambda i: GeneratorPoly.gen(i, nu), GeneratorPoly.unit()))

    head = OrbitIndex((entries[0],), alpha.arity)
    tail = OrbitIndex(entries[1:], alpha.arity)
    expansion = basis_product(head, tail)
    if expansion.get(alpha) != 1:
        raise MsymError(f"product expansion of {head}·{tail} does not contain {alpha} once")
    result = _rewrite(head, table) * _rewrite(tail, table)
    for gamma in sorted(expansion, key=OrbitIndex.sort_key, reverse=True):
        if gamma == alpha:
            continue
        if gamma.size >= alpha.size:
            raise MsymError(f"rewrite of {alpha} produced a correction {gamma} that is not smaller")
        result = result - _rewrite(gamma, table).scale(expansion[gamma])
    return table.record(alpha, result)


def eval_generator_poly(G: GeneratorPoly, n: int, m: int) -> ConcretePoly:
    """e_{i,μ} ↦ e_i(μ) trong A(n,m) (bằng 0 khi i > n), rồi khai triển."""
    ring = G.coeff_ring
    one = ConcretePoly.one(n, m, ring)
    return G.evaluate(lambda s: orbit_sum(OrbitIndex.single(s.base, s.degree), n, ring), one)


def rational_rewrite_to_e1(alpha: OrbitIndex, coeff_ring: CoeffRing = QQ_RING) -> GeneratorPoly:
    """Viết lại theo các e_1(μ) trên Q: e_{k,ν} ↦ khai triển Newton của e_k với p_j ↦ e_1(ν^j)."""
    if not coeff_ring.contains_rationals:
        raise DomainError("requires rational coefficients")
    G = rewrite_to_generators(alpha, QQ_RING)
    unit = GeneratorPoly.unit(QQ_RING)

    def image(s) -> GeneratorPoly:
        if isinstance(s, LinearSymbol):
            return GeneratorPoly.linear(s.base, QQ_RING)
        return newton_e_in_p(s.degree).evaluate(lambda j: GeneratorPoly.linear(s.base ** j, QQ_RING), unit)

    return G.evaluate(image, unit)


# ========== ĐƠN THỨC CỦA C(m) ==========

def generator_symbols(a: Sequence[int], max_degree: int | None = None,
                      max_weight: int | None = None) -> list[GeneratorSymbol]:
    """Mọi e_{i,μ} với i·∂(μ) <= a, i <= max_degree và i·l(μ) <= max_weight."""
    symbols = []
    for mu in monomials_below(tuple(a)):
        if not mu.is_primitive:
            continue
        i = 1
        while all(i * e <= b for e, b in zip(mu.exponents, a)):
            if max_degree is not None and i > max_degree:
                break
            if max_weight is not None and i * mu.total_degree > max_weight:
                break
            symbols.append(GeneratorSymbol(i, mu))
            i += 1
    return sorted(symbols, key=GeneratorSymbol.sort_key)


def free_monomials(a: Sequence[int], symbols: Sequence) -> list[tuple]:
    """Mọi đơn thức theo các ký hiệu đã cho có đa bậc đúng bằng a (khóa FreePolynomial)."""
    a = tuple(a)
    found: list[tuple] = []

    def walk(i: int, remaining: tuple[int, ...], chosen: list):
        if not any(remaining):
            found.append(tuple(chosen))
            return
        if i == len(symbols):
            return
        s = symbols[i]
        vec = s.multidegree
        top = min(r // d for r, d in zip(remaining, vec) if d)
        for t in range(top, -1, -1):
            if t:
                chosen.append((s, t))
            walk(i + 1, tuple(r - t * d for r, d in zip(remaining, vec)), chosen)
            if t:
                chosen.pop()

    walk(0, a, [])
    return found


def _monomial_image(key: tuple, arity: int, n: int | None) -> MultiSymElement:
    """Ảnh của một đơn thức C(m) trong A(∞,m) (hoặc trong A(n,m) khi có n), hệ số nguyên."""
    result = MultiSymElement.one(arity, ZZ_RING)
    for s, e in key:
        factor = MultiSymElement.basis(OrbitIndex.single(s.base, s.degree), ZZ_RING)
        for _ in range(e):
            result = multiply(result, factor)
            if n is not None:
                result = project_n(result, n)
    return result


# ========== CHỨNG NHẬN ==========

@dataclass
class RankCertificate:
    """Một phát biểu hạng tại (n, m, a): các hạng, kích thước ma trận, kết luận."""
    check: str
    n: int | None
    m: int
    multidegree: tuple[int, ...] | None
    coeff: str
    dimensions: tuple[int, int] = (0, 0)
    ranks: dict[str, int] = field(default_factory=dict)
    verdict: str = "pass"
    escalation: int = 0
    details: dict[str, str] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def context(self) -> str:
        parts = [self.check]
        if self.n is not None:
            parts.append(f"n={self.n}")
        parts.append(f"m={self.m}")
        if self.multidegree is not None:
            parts.append("a=(" + ",".join(str(x) for x in self.multidegree) + ")")
        parts.append(f"coeff={self.coeff}")
        return " ".join(parts)

    def to_line(self, timings: bool = False) -> str:
        ranks = " ".join(f"{k}={v}" for k, v in sorted(self.ranks.items()))
        line = (f"{self.verdict.upper()} {self.context()} dims={self.dimensions[0]}x{self.dimensions[1]}"
                f" ranks[{ranks}] escalation={self.escalation}")
        if self.details:
            line += " " + " ".join(f"{k}={v}" for k, v in sorted(self.details.items()))
        if timings:
            line += f" time={self.elapsed:.3f}s"
        return line

    def to_record(self, timings: bool = False) -> dict:
        record = {
            "kind": "certificate",
            "check": self.check,
            "n": None if self.n is None else str(self.n),
            "m": str(self.m),
            "multidegree": None if self.multidegree is None else [str(x) for x in self.multidegree],
            "coeff": self.coeff,
            "dimensions": [str(x) for x in self.dimensions],
            "ranks": {k: str(v) for k, v in sorted(self.ranks.items())},
            "verdict": self.verdict,
            "escalation": str(self.escalation),
            "details": dict(sorted(self.details.items())),
        }
        if timings:
            record["elapsed"] = f"{self.elapsed:.6f}"
        return record

    @classmethod
    def from_record(cls, record: dict) -> "RankCertificate":
        return cls(
            check=record["check"],
            n=None if record.get("n") is None else int(record["n"]),
            m=int(record["m"]),
            multidegree=None if record.get("multidegree") is None
            else tuple(int(x) for x in record["multidegree"]),
            coeff=record["coeff"],
            dimensions=tuple(int(x) for x in record.get("dimensions", ("0", "0"))),
            ranks={k: int(v) for k, v in record.get("ranks", {}).items()},
            verdict=record.get("verdict", "pass"),
            escalation=int(record.get("escalation", "0")),
            details=dict(record.get("details", {})),
            elapsed=float(record.get("elapsed", "0")),
        )


def timed(fn: Callable[..., RankCertificate]) -> Callable[..., RankCertificate]:
    """Ghi thời gian chạy vào chứng nhận trả về."""
    @wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        cert = fn(*args, **kwargs)
        cert.elapsed = time.perf_counter() - start
        return cert
    return wrapper


def _field_for(coeff: CoeffRing) -> CoeffRing:
    return coeff if coeff.is_field else QQ_RING


def _concrete_vector(p: ConcretePoly, position: dict[tuple[int, ...], int]) -> list[int]:
    vec = [0] * len(position)
    for exps, c in p.exponent_terms().items():
        vec[position[exps]] = int(c)
    return vec


def invariant_rank(n: int, m: int, a: Sequence[int], coeff: CoeffRing = QQ_RING) -> int:
    """Hạng của A(n,m,a)^{S_n}, tính độc lập từ các đơn thức cụ thể được đối xứng hóa."""
    monomials = monomials_of_multidegree(n, m, a)
    position = {exps: i for i, exps in enumerate(monomials)}
    seen: set[tuple[int, ...]] = set()
    rows = []
    for exps in monomials:
        if exps in seen:
            continue
        orbit = symmetrize_monomial(exps, n, m)
        seen.update(orbit.exponent_terms())
        rows.append(_concrete_vector(orbit, position))
    return rank_over(_field_for(coeff), rows)


@timed
def certify_basis(n: int, m: int, a: Sequence[int], coeff: CoeffRing = QQ_RING) -> RankCertificate:
    a = tuple(a)
    fld = _field_for(coeff)
    basis = enumerate_basis(a, n)
    monomials = monomials_of_multidegree(n, m, a)
    position = {exps: i for i, exps in enumerate(monomials)}
    rows = [_concrete_vector(orbit_sum(alpha, n), position) for alpha in basis]
    independent = rank_over(QQ_RING, rows)
    inv = invariant_rank(n, m, a, fld)
    ok = len(basis) == inv and independent == len(basis)
    return RankCertificate("basis", n, m, a, coeff.spec, (len(basis), len(monomials)),
                           {"basis": len(basis), "invariant": inv, "orbit_sums": independent},
                           "pass" if ok else "fail")


def _relation_space(a: tuple[int, ...], k: int) -> list[OrbitIndex]:
    return [alpha for alpha in enumerate_basis(a, k) if alpha.size == k]


@timed
def certify_relation_span(n: int, m: int, a: Sequence[int], k: int, coeff: CoeffRing = QQ_RING,
                          seed: int = 20240601, probe_limit: int = 4096) -> RankCertificate:
    """
    span{e_k(f) thành phần a : f thăm dò} = V_{k,a}. Mức leo thang L dùng hệ số trong {0..L};
    lưới đầy đủ khi đủ nhỏ, ngược lại lấy mẫu ngẫu nhiên với hạt giống cố định.
    """
    a = tuple(a)
    if k <= n:
        raise DomainError(f"relation span needs k > n, got k={k}, n={n}")
    fld = _field_for(coeff)
    space = _relation_space(a, k)
    cert = RankCertificate("relations", n, m, a, coeff.spec, (0, len(space)), {"k": k, "target": len(space)})
    if not space:
        cert.ranks["span"] = 0
        cert.details["vacuous"] = "yes"
        return cert

    support = sorted({mu for alpha in space for mu in alpha.support}, key=Monomial.sort_key, reverse=True)
    exponents = [[alpha.multiplicity(mu) for mu in support] for alpha in space]

    def probe_row(values: Sequence[int]) -> list[int]:
        row = []
        for exps in exponents:
            value = 1
            for lam, e in zip(values, exps):
                if e:
                    value *= lam ** e
            row.append(value)
        return row

    # Đối chiếu công thức hàng với khai triển e_k(f) đầy đủ trên một đầu dò
    if len(support) <= 6:
        values = [i + 1 for i in range(len(support))]
        f = Polynomial.from_terms(dict(zip(support, values)), m, ZZ_RING)
        expanded = expand_e_k_of(f, k).homogeneous_component(a)
        if expanded.coordinates(space) != [ZZ_RING.convert(v) for v in probe_row(values)]:
            cert.verdict = "fail"
            cert.details["crosscheck"] = "mismatch"
            return cert
        cert.details["crosscheck"] = "ok"

    rowspace = RowSpace(fld, len(space))
    probes = 0
    for level in range(1, k + 1):
        cert.escalation = level
        grid_size = (level + 1) ** len(support)
        if grid_size <= probe_limit:
            candidates: Iterable = grid_product(range(level + 1), repeat=len(support))
        else:
            rng = random.Random(seed + level)
            candidates = ([rng.randint(0, level) for _ in support] for _ in range(probe_limit))
        for values in candidates:
            probes += 1
            rowspace.add(probe_row(values))
            if rowspace.is_full:
                break
        if rowspace.is_full:
            break
    cert.dimensions = (probes, len(space))
    cert.ranks["span"] = rowspace.rank
    cert.verdict = "pass" if rowspace.is_full else "fail"
    return cert


def _coordinates_in(G: GeneratorPoly, position: dict[tuple, int], fld: CoeffRing) -> list:
    row = [fld.zero] * len(position)
    for key, c in G.terms.items():
        row[position[key]] = fld.convert(G.coeff_ring.as_fraction(c))
    return row


@timed
def certify_presentation(n: int, m: int, a: Sequence[int], coeff: CoeffRing = QQ_RING,
                         seed: int = 20240601, probe_limit: int = 4096) -> RankCertificate:
    """rank(C(m)_a) - rank(I_a) = rank(A(n,m,a)^{S_n}), I_a sinh bởi b·rewrite(e_α) với |α| > n."""
    a = tuple(a)
    fld = _field_for(coeff)
    symbols = generator_symbols(a)
    monomials = free_monomials(a, symbols)
    position = {key: i for i, key in enumerate(monomials)}
    ideal = RowSpace(fld, len(monomials))
    rows = 0
    for sub in monomials_below(a):
        for alpha in enumerate_basis(sub.exponents, None):
            if alpha.size <= n:
                continue
            relation = rewrite_to_generators(alpha)
            complement = tuple(x - y for x, y in zip(a, sub.exponents))
            cofactors = free_monomials(complement, generator_symbols(complement)) if any(complement) else [()]
            for b in cofactors:
                rows += 1
                ideal.add(_coordinates_in(GeneratorPoly({b: 1}, ZZ_RING) * relation, position, fld))
                if ideal.is_full:
                    break
    inv = invariant_rank(n, m, a, fld)
    ok = len(monomials) - ideal.rank == inv
    cert = RankCertificate("presentation", n, m, a, coeff.spec, (rows, len(monomials)),
                           {"generators": len(monomials), "ideal": ideal.rank, "invariant": inv},
                           "pass" if ok else "fail")
    for k in range(n + 1, sum(a) + 1):
        sub_cert = certify_relation_span(n, m, a, k, QQ_RING, seed, probe_limit)
        cert.escalation = max(cert.escalation, sub_cert.escalation)
        if not sub_cert.passed:
            cert.verdict = "fail"
            cert.details[f"relations_k{k}"] = "fail"
    return cert


def certify_generation_bound(n: int, m: int, coeff: CoeffRing = QQ_RING,
                             max_total_degree: int = 6) -> list[RankCertificate]:
    return [certify_generation_piece(n, m, a, coeff) for a in multidegrees_up_to(m, max_total_degree)]


def generation_bound(n: int, m: int) -> int:
    return max(n, n * (m - 1))


@timed
def certify_generation_piece(n: int, m: int, a: Sequence[int], coeff: CoeffRing = QQ_RING,
                             bound: int | None = None) -> RankCertificate:
    """
    Tích các e_k(μ) (μ nguyên thủy, k <= n, k·l(μ) <= bound) có span A(n,m,a)^{S_n}
    hay không; ghi lại bậc sinh nhỏ nhất đủ để span. Mặc định bound = max(n, n(m-1)).
    """
    a = tuple(a)
    fld = _field_for(coeff)
    bound = generation_bound(n, m) if bound is None else bound
    basis = enumerate_basis(a, n)
    symbols = generator_symbols(a, max_degree=n, max_weight=bound)
    monomials = free_monomials(a, symbols)
    monomials.sort(key=lambda key: max(s.weight for s, _ in key))
    rowspace = RowSpace(fld, len(basis))
    integral_rows = []
    minimal = None
    for key in monomials:
        image = _monomial_image(key, m, n)
        coords = [int(c) for c in image.coordinates(basis)]
        integral_rows.append(coords)
        rowspace.add(coords)
        if rowspace.is_full and minimal is None:
            minimal = max(s.weight for s, _ in key)
            if coeff.kind != "z":
                break
    cert = RankCertificate("degree-bound", n, m, a, coeff.spec, (len(monomials), len(basis)),
                           {"target": len(basis), "span": rowspace.rank, "bound": bound},
                           "pass" if rowspace.is_full else "fail")
    if minimal is not None:
        cert.ranks["minimal_degree"] = minimal
    if coeff.kind == "z":
        factors = smith_normal_form(integral_rows) if integral_rows else ()
        cert.details["z_spans"] = "yes" if spans_lattice(integral_rows, len(basis)) else "no"
        cert.details["snf_nonunit"] = str(sum(1 for d in factors[:len(basis)] if d != 1))
    return cert


def generation_sharpness(certificates: Iterable[RankCertificate]) -> int:
    """Bậc sinh nhỏ nhất lớn nhất trên các thành phần: nhân chứng cho tính sắc của cận."""
    return max((c.ranks.get("minimal_degree", 0) for c in certificates), default=0)


@timed
def certify_freeness(m: int, a: Sequence[int]) -> RankCertificate:
    """Số đơn thức của C(m)_a bằng số phần tử cơ sở của A(∞,m,a), σ_m độc lập, và σ_m ∘ rewrite = id."""
    a = tuple(a)
    monomials = free_monomials(a, generator_symbols(a))
    basis = enumerate_basis(a, None)
    rows = [[int(c) for c in _monomial_image(key, m, None).coordinates(basis)] for key in monomials]
    rank = rank_over(QQ_RING, rows)
    failures = 0
    for alpha in basis:
        if sigma(rewrite_to_generators(alpha), m) != MultiSymElement.basis(alpha, ZZ_RING):
            failures += 1
    ok = len(monomials) == len(basis) == rank and failures == 0
    return RankCertificate("freeness", None, m, a, "z", (len(monomials), len(basis)),
                           {"generators": len(monomials), "basis": len(basis), "sigma": rank,
                            "roundtrip_failures": failures},
                           "pass" if ok else "fail")


@timed
def certify_rewrite(n: int, m: int, a: Sequence[int]) -> RankCertificate:
    """eval(rewrite(α), n) = orbit_sum(α, n) cho mọi α của thành phần a, và rewrite giữ đa bậc."""
    a = tuple(a)
    basis = enumerate_basis(a, n)
    failures = 0
    for alpha in basis:
        G = rewrite_to_generators(alpha)
        if G.multidegrees(m) - {a}:
            failures += 1
        elif eval_generator_poly(G, n, m) != orbit_sum(alpha, n):
            failures += 1
    return RankCertificate("rewrite", n, m, a, "z", (len(basis), 0),
                           {"basis": len(basis), "failures": failures},
                           "pass" if failures == 0 else "fail")


@timed
def certify_projection(n: int, h: int, m: int, a: Sequence[int]) -> RankCertificate:
    """π^h_n(e_α trong A(h,m)) = e_α trong A(n,m) nếu |α| <= n, ngược lại bằng 0."""
    a = tuple(a)
    if not 0 < n < h:
        raise DomainError(f"projection needs 0 < n < h, got n={n}, h={h}")
    basis = enumerate_basis(a, h)
    failures = 0
    for alpha in basis:
        projected = project_slots(orbit_sum(alpha, h), n)
        expected = orbit_sum(alpha, n) if alpha.size <= n else ConcretePoly.zero(n, m, ZZ_RING)
        if projected != expected:
            failures += 1
    cert = RankCertificate("projection", n, m, a, "z", (len(basis), 0),
                           {"basis": len(basis), "killed": sum(1 for al in basis if al.size > n),
                            "failures": failures},
                           "pass" if failures == 0 else "fail")
    cert.details["h"] = str(h)
    return cert


@timed
def certify_rational_generation(n: int, m: int, a: Sequence[int]) -> RankCertificate:
    """Viết lại hữu tỉ theo e_1(μ) đúng khi đánh giá, và các tích e_1(μ) với l(μ) <= n span trên Q."""
    a = tuple(a)
    basis = enumerate_basis(a, n)
    failures = 0
    for alpha in basis:
        G = rational_rewrite_to_e1(alpha)
        if eval_generator_poly(G, n, m) != orbit_sum(alpha, n, QQ_RING):
            failures += 1
    products = [alpha for alpha in enumerate_basis(a, None)
                if all(mu.total_degree <= n for mu in alpha.support)]
    rows = []
    for alpha in products:
        key = tuple((LinearSymbol(mu), k) for mu, k in alpha.entries)
        rows.append([int(c) for c in _monomial_image(key, m, n).coordinates(basis)])
    rank = rank_over(QQ_RING, rows)
    ok = failures == 0 and rank == len(basis)
    return RankCertificate("rational", n, m, a, "q", (len(products), len(basis)),
                           {"basis": len(basis), "span": rank, "failures": failures},
                           "pass" if ok else "fail")


@timed
def certify_product_formula(m: int, pairs: int, seed: int = 20240601,
                            max_size: int = 3, max_support: int = 3) -> RankCertificate:
    """
    Công thức tích đối chiếu với phép nhân cụ thể trên các cặp (α, β) ngẫu nhiên,
    n = |α| + |β|; đồng thời kiểm tra đa bậc và |γ| >= max(|α|, |β|).
    """
    rng = random.Random(seed + m)
    failures = 0
    for _ in range(pairs):
        alpha = random_orbit_index(rng, m, max_size, max_support)
        beta = random_orbit_index(rng, m, max_size, max_support)
        n = alpha.size + beta.size
        expansion = basis_product(alpha, beta)
        target = tuple(x + y for x, y in zip(alpha.multidegree, beta.multidegree))
        if any(g.multidegree != target or g.size < max(alpha.size, beta.size) for g in expansion):
            failures += 1
            continue
        lhs = orbit_sum(alpha, n) * orbit_sum(beta, n)
        rhs = ConcretePoly.zero(n, m, ZZ_RING)
        for gamma, c in expansion.items():
            rhs = rhs + orbit_sum(gamma, n).scale(c)
        if lhs != rhs:
            failures += 1
    return RankCertificate("product", None, m, None, "z", (pairs, 0),
                           {"pairs": pairs, "failures": failures},
                           "pass" if failures == 0 else "fail")


def random_orbit_index(rng: random.Random, m: int, max_size: int = 3, max_support: int = 3,
                       max_exponent: int = 2) -> OrbitIndex:
    """α ngẫu nhiên với 1 <= |α| <= max_size và giá đỡ tối đa max_support."""
    available = (max_exponent + 1) ** m - 1
    size = rng.randint(1, max_size)
    support = rng.randint(1, min(size, max_support, available))
    cuts = sorted(rng.sample(range(1, size), support - 1)) if support > 1 else []
    mults = [b - a for a, b in zip([0] + cuts, cuts + [size])]
    chosen: dict[Monomial, int] = {}
    for k in mults:
        while True:
            mu = Monomial(tuple(rng.randint(0, max_exponent) for _ in range(m)))
            if not mu.is_constant and mu not in chosen:
                break
        chosen[mu] = k
    return OrbitIndex.of(chosen, m)

