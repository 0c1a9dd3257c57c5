# analysis/symfun.py
"""
Hàm đối xứng cổ điển trong một bảng chữ cái (trường hợp m = 1):
cơ sở sơ cấp e_i, tổng lũy thừa p_k, công thức Newton, rút gọn Gauss
(đa thức đối xứng -> đa thức theo e_i) và đa thức plethysm P_{h,k} = e_h ∘ p_k.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable

from core.errors import DomainError
from core.ringcore import CoeffRing, FreePolynomial, SparsePolynomial, sympy_ring

ZZ_RING = CoeffRing.integers()
QQ_RING = CoeffRing.rationals()


# ========== ĐA THỨC THEO e_i VÀ p_i ==========

class ElementaryPoly(FreePolynomial):
    """Đa thức theo các ký hiệu e1, e2, ...; trọng số của e_i là i."""
    __slots__ = ()
    prefix = "e"

    @classmethod
    def symbol_key(cls, symbol) -> tuple:
        return (symbol,)

    @classmethod
    def format_symbol(cls, symbol) -> str:
        return f"{cls.prefix}{symbol}"

    @classmethod
    def symbol_weight(cls, symbol) -> int:
        return symbol

    def term_sort_key(self, key) -> tuple:
        indices = sorted((s for s, e in key for _ in range(e)), reverse=True)
        return (-self.weight_of(key), -len(indices), tuple(indices))

    @classmethod
    def gen(cls, i: int, coeff_ring: CoeffRing = ZZ_RING):
        if i < 1:
            raise DomainError(f"symbol index must be positive, got {i}")
        return cls({((i, 1),): 1}, coeff_ring)

    @classmethod
    def unit(cls, coeff_ring: CoeffRing = ZZ_RING):
        return cls({(): 1}, coeff_ring)

    def max_index(self) -> int:
        return max(self.symbols(), default=0)


class PowerSumPoly(ElementaryPoly):
    """Đa thức theo các tổng lũy thừa p1, p2, ..."""
    __slots__ = ()
    prefix = "p"


def newton_p_in_e(k: int, coeff_ring: CoeffRing = ZZ_RING) -> ElementaryPoly:
    """p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^{k-1} k e_k."""
    if k < 1:
        raise DomainError(f"power sum index must be positive, got {k}")
    result = _newton_p_in_e_integral(k)
    return result if coeff_ring == ZZ_RING else result.change_ring(coeff_ring)


@lru_cache(maxsize=None)
def _newton_p_in_e_integral(k: int) -> ElementaryPoly:
    sign = 1 if k % 2 == 1 else -1
    total = ElementaryPoly.gen(k).scale(sign * k)
    for i in range(1, k):
        sign_i = 1 if i % 2 == 1 else -1
        total = total + (ElementaryPoly.gen(i) * _newton_p_in_e_integral(k - i)).scale(sign_i)
    return total


@lru_cache(maxsize=None)
def newton_e_in_p(k: int) -> PowerSumPoly:
    """e_k theo p_1..p_k trên Q: k e_k = Σ_{i=1}^k (-1)^{i-1} e_{k-i} p_i."""
    if k < 0:
        raise DomainError(f"elementary index must be nonnegative, got {k}")
    if k == 0:
        return PowerSumPoly.unit(QQ_RING)
    total = PowerSumPoly({}, QQ_RING)
    for i in range(1, k + 1):
        sign = 1 if i % 2 == 1 else -1
        total = total + (newton_e_in_p(k - i) * PowerSumPoly.gen(i, QQ_RING)).scale(sign)
    return total.scale(Fraction(1, k))


def truncate_to_n(P: ElementaryPoly, n: int) -> ElementaryPoly:
    """e_i ↦ 0 với mọi i > n."""
    return P._new({key: c for key, c in P.terms.items() if all(s <= n for s, _ in key)})


# ========== NHÂN CHỨNG ĐỐI XỨNG (N biến) ==========

class SymmetricWitness(SparsePolynomial):
    """Đa thức cụ thể trong x1..xN, dùng để kiểm chứng tính đối xứng."""
    __slots__ = ("size",)

    def __init__(self, element, size: int, coeff_ring: CoeffRing):
        super().__init__(element, coeff_ring)
        self.size = size

    @staticmethod
    def ring_for(size: int, coeff_ring: CoeffRing):
        return sympy_ring(tuple(f"x{i}" for i in range(1, size + 1)), coeff_ring)

    def _shape(self) -> tuple:
        return ("w", self.size)

    def _rebuild(self, element) -> "SymmetricWitness":
        return SymmetricWitness(element, self.size, self.coeff_ring)

    @classmethod
    def from_terms(cls, terms, size: int, coeff_ring: CoeffRing = ZZ_RING) -> "SymmetricWitness":
        ring = cls.ring_for(size, coeff_ring)
        converted = {tuple(k): coeff_ring.coerce(c) for k, c in terms.items()}
        return cls(ring.from_dict({k: v for k, v in converted.items() if v}), size, coeff_ring)

    @classmethod
    def zero(cls, size: int, coeff_ring: CoeffRing = ZZ_RING) -> "SymmetricWitness":
        return cls(cls.ring_for(size, coeff_ring).zero, size, coeff_ring)

    @classmethod
    def one(cls, size: int, coeff_ring: CoeffRing = ZZ_RING) -> "SymmetricWitness":
        return cls(cls.ring_for(size, coeff_ring).one, size, coeff_ring)

    def is_symmetric(self) -> bool:
        items = self.exponent_terms()
        for j in range(self.size - 1):
            for exps, c in items.items():
                swapped = list(exps)
                swapped[j], swapped[j + 1] = swapped[j + 1], swapped[j]
                if items.get(tuple(swapped)) != c:
                    return False
        return True

    def to_text(self) -> str:
        return self._format_with(
            lambda exps: "*".join(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                                  for i, e in enumerate(exps) if e) or "1")


def power_sum_in_variables(k: int, size: int, coeff_ring: CoeffRing = ZZ_RING) -> SymmetricWitness:
    terms = {}
    for i in range(size):
        exps = [0] * size
        exps[i] = k
        terms[tuple(exps)] = 1
    return SymmetricWitness.from_terms(terms, size, coeff_ring)


def elementary_in_variables(size: int, coeff_ring: CoeffRing = ZZ_RING) -> list[SymmetricWitness]:
    """[e_0, e_1, ..., e_N] trong x1..xN, dựng từ Π(1 + t x_i)."""
    ring = SymmetricWitness.ring_for(size, coeff_ring)
    gens = ring.gens
    e = [ring.one] + [ring.zero] * size
    for i in range(size):
        for k in range(i + 1, 0, -1):
            e[k] = e[k] + gens[i] * e[k - 1]
    return [SymmetricWitness(el, size, coeff_ring) for el in e]


def evaluate_elementary(P: ElementaryPoly, size: int) -> SymmetricWitness:
    """Thay e_i bằng e_i(x_1..x_N) (bằng 0 khi i > N)."""
    es = elementary_in_variables(size, P.coeff_ring)
    zero = SymmetricWitness.zero(size, P.coeff_ring)
    return P.evaluate(lambda i: es[i] if i <= size else zero, es[0])


def sym_to_elementary(w: SymmetricWitness) -> ElementaryPoly:
    """
    Đa thức P duy nhất với P(e_1(x),...,e_N(x)) = w, bằng cách trừ dần hạng tử
    dẫn đầu (graded-lex). Số mũ dẫn đầu của một đa thức đối xứng luôn là phân hoạch.
    """
    if not w.is_symmetric():
        raise DomainError("not symmetric")
    ring, size = w.coeff_ring, w.size
    es = elementary_in_variables(size, ring)
    powers: dict[tuple[int, int], SymmetricWitness] = {}

    def power(i: int, d: int) -> SymmetricWitness:
        if (i, d) not in powers:
            powers[(i, d)] = es[i] ** d
        return powers[(i, d)]

    coords: dict[tuple[tuple[int, int], ...], Any] = {}
    rest = w
    while not rest.is_zero():
        lam, c = rest.leading_term()
        key = []
        product = es[0]
        for i in range(1, size + 1):
            d = lam[i - 1] - (lam[i] if i < size else 0)
            if d < 0:
                raise DomainError(f"leading exponent {lam} is not a partition")
            if d:
                key.append((i, d))
                product = product * power(i, d)
        coords[tuple(key)] = c
        rest = rest - product.scale(c)
    return ElementaryPoly(coords, ring)


# ========== PLETHYSM P_{h,k} ==========

def _compute_plethysm(h: int, k: int) -> ElementaryPoly:
    size = h * k
    e_h = elementary_in_variables(size)[h]
    scaled = {tuple(e * k for e in exps): c for exps, c in e_h.exponent_terms().items()}
    return sym_to_elementary(SymmetricWitness.from_terms(scaled, size))


class PlethysmTable:
    """Bảng P_{h,k} hệ số nguyên, đọc đồng thời và chèn có khóa."""

    def __init__(self):
        self._lock = threading.Lock()
        self._table: dict[tuple[int, int], ElementaryPoly] = {}
        self.computed = 0

    def get(self, h: int, k: int) -> ElementaryPoly | None:
        return self._table.get((h, k))

    def put(self, h: int, k: int, value: ElementaryPoly) -> ElementaryPoly:
        with self._lock:
            return self._table.setdefault((h, k), value)

    def get_or_compute(self, h: int, k: int,
                       compute: Callable[[int, int], ElementaryPoly] = _compute_plethysm) -> ElementaryPoly:
        found = self._table.get((h, k))
        if found is not None:
            return found
        value = compute(h, k)
        with self._lock:
            self.computed += 1
            return self._table.setdefault((h, k), value)

    def items(self) -> list[tuple[tuple[int, int], ElementaryPoly]]:
        with self._lock:
            return sorted(self._table.items())

    def __contains__(self, hk) -> bool:
        return hk in self._table

    def __len__(self) -> int:
        return len(self._table)


PLETHYSM_TABLE = PlethysmTable()


def plethysm_P(h: int, k: int, table: PlethysmTable | None = None) -> ElementaryPoly:
    """P_{h,k}: e_h(x_1^k, ..., x_N^k) theo e_1..e_{hk}, với N = hk."""
    if h < 1 or k < 1:
        raise DomainError(f"plethysm needs h, k >= 1, got ({h}, {k})")
    return (PLETHYSM_TABLE if table is None else table).get_or_compute(h, k)
