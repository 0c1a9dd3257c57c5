# core/ringcore.py
"""
Lõi đại số của msym: vành hệ số R, đơn thức trong y_1..y_m, đa thức thưa
A_R(m) = R[y_1,...,y_m] và đa thức tự do trên bảng chữ cái không giới hạn.

Số học hệ số và số học đa thức nhiều biến đều do sympy đảm nhận
(ZZ, QQ, GF(p) và PolyRing với thứ tự graded-lex). Không có số thực dấu phẩy
động ở bất kỳ đâu.

Thứ tự đơn thức dùng chung cho toàn dự án: graded-lex với y1 > y2 > ... > ym.
Mọi phép in đều sắp các hạng tử theo thứ tự giảm dần này.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Any, Callable, Hashable, Iterable, Mapping

from sympy import Symbol
from sympy.ntheory import isprime
from sympy.polys.domains import FF, QQ, ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from core.errors import DomainError, RingMismatchError


# ========== VÀNH HỆ SỐ ==========

@lru_cache(maxsize=None)
def _domain_for(kind: str, prime: int | None):
    if kind == "z":
        return ZZ
    if kind == "q":
        return QQ
    # Đại diện chính tắc trong [0, p)
    return FF(prime, symmetric=False)


@dataclass(frozen=True)
class CoeffRing:
    """
    Vành hệ số R: số nguyên (z), số hữu tỉ (q) hoặc trường F_p (fp).

    Phần tử là phần tử của miền sympy tương ứng; mọi phép toán đều chính xác.
    """
    kind: str
    prime: int | None = None

    def __post_init__(self):
        if self.kind not in ("z", "q", "fp"):
            raise DomainError(f"unknown coefficient ring '{self.kind}'")
        if self.kind == "fp":
            if self.prime is None or not isprime(self.prime):
                raise DomainError(f"fp requires a prime, got {self.prime}")
        elif self.prime is not None:
            raise DomainError(f"ring '{self.kind}' takes no prime")

    @classmethod
    def integers(cls) -> "CoeffRing":
        return cls("z")

    @classmethod
    def rationals(cls) -> "CoeffRing":
        return cls("q")

    @classmethod
    def prime_field(cls, p: int) -> "CoeffRing":
        return cls("fp", int(p))

    @classmethod
    def parse_spec(cls, text: str) -> "CoeffRing":
        """Đọc 'z', 'q', 'fp:<p>' (hoặc 'fp<p>')."""
        spec = text.strip().lower()
        if spec in ("z", "zz"):
            return cls.integers()
        if spec in ("q", "qq"):
            return cls.rationals()
        if spec.startswith("fp"):
            digits = spec[2:].lstrip(":")
            if digits.isdigit():
                return cls.prime_field(int(digits))
        raise DomainError(f"bad coefficient ring '{text}' (expected z | q | fp:<p>)")

    @property
    def spec(self) -> str:
        return f"fp:{self.prime}" if self.kind == "fp" else self.kind

    @property
    def domain(self):
        return _domain_for(self.kind, self.prime)

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    @property
    def is_field(self) -> bool:
        return self.kind != "z"

    @property
    def contains_rationals(self) -> bool:
        return self.kind == "q"

    @property
    def characteristic(self) -> int:
        return self.prime if self.kind == "fp" else 0

    def convert(self, value: Any):
        """Đưa int, Fraction hoặc phần tử miền ZZ/QQ về vành này."""
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
        elif isinstance(value, int):
            num, den = value, 1
        else:
            num, den = _as_pair(value)
        if den == 1:
            return self.domain.convert(num)
        if self.kind == "z":
            raise DomainError(f"{num}/{den} is not an integer")
        if self.kind == "q":
            return QQ(num, den)
        if den % self.prime == 0:
            raise DomainError(f"{num}/{den} has no image in F_{self.prime}")
        return self.domain.convert(num) / self.domain.convert(den)

    def coerce(self, c):
        """Như convert, nhưng giữ nguyên phần tử đã thuộc miền."""
        return c if self.domain.of_type(c) else self.convert(c)

    def as_fraction(self, c) -> Fraction:
        num, den = self.numerator_denominator(c)
        return Fraction(num, den)

    def numerator_denominator(self, c) -> tuple[int, int]:
        if self.kind == "q":
            return int(QQ.numer(c)), int(QQ.denom(c))
        return int(c), 1

    def to_string(self, c) -> str:
        """Dạng thập phân chính xác: "7", "-3/2"."""
        num, den = self.numerator_denominator(c)
        return str(num) if den == 1 else f"{num}/{den}"

    def is_zero(self, c) -> bool:
        return not c

    def __str__(self) -> str:
        return {"z": "Z", "q": "Q"}.get(self.kind, f"F_{self.prime}")


def _as_pair(value) -> tuple[int, int]:
    # Phần tử QQ của sympy (PythonMPQ hoặc mpq) có numerator/denominator
    num = getattr(value, "numerator", None)
    den = getattr(value, "denominator", None)
    if num is not None and den is not None:
        return int(num), int(den)
    return int(value), 1


# ========== ĐỊNH DẠNG VĂN BẢN (dùng chung) ==========

def format_coefficient(c, ring: CoeffRing) -> tuple[bool, str]:
    """Trả về (âm?, giá trị tuyệt đối dạng chuỗi). Phân số được đặt trong ngoặc."""
    num, den = ring.numerator_denominator(c)
    negative = num < 0
    num = abs(num)
    return negative, (str(num) if den == 1 else f"({num}/{den})")


def term_text(coefficient_text: str, body: str) -> str:
    if not body:
        return coefficient_text
    if coefficient_text == "1":
        return body
    return f"{coefficient_text}*{body}"


def join_terms(pieces: Iterable[tuple[bool, str]]) -> str:
    out = ""
    for negative, text in pieces:
        if not out:
            out = f"-{text}" if negative else text
        else:
            out += f" - {text}" if negative else f" + {text}"
    return out or "0"


def power_text(base: str, exponent: int) -> str:
    return base if exponent == 1 else f"{base}^{exponent}"


# ========== ĐƠN THỨC ==========

def grlex_key(exponents: tuple[int, ...]) -> tuple:
    """Khóa graded-lex: so sánh tổng bậc trước, sau đó từ điển (y1 > y2 > ...)."""
    return (sum(exponents), exponents)


@dataclass(frozen=True)
class Monomial:
    """Đơn thức y_1^{a_1}...y_m^{a_m}; exponents[i-1] là ∂_i(μ)."""
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise DomainError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def one(cls, m: int) -> "Monomial":
        return cls((0,) * m)

    @classmethod
    def variable(cls, i: int, m: int) -> "Monomial":
        if not 1 <= i <= m:
            raise DomainError(f"variable y{i} out of range for m={m}")
        return cls(tuple(1 if j == i - 1 else 0 for j in range(m)))

    @property
    def arity(self) -> int:
        return len(self.exponents)

    @property
    def multidegree(self) -> tuple[int, ...]:
        return self.exponents

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    @property
    def is_constant(self) -> bool:
        return self.total_degree == 0

    @property
    def is_primitive(self) -> bool:
        return not self.is_constant and self._gcd() == 1

    def _gcd(self) -> int:
        return reduce(math.gcd, (e for e in self.exponents if e), 0)

    def primitive_root(self) -> tuple["Monomial", int]:
        """μ = ν^k với ν nguyên thủy; k là ước chung lớn nhất của các số mũ khác 0."""
        if self.is_constant:
            raise DomainError("constant monomial has no primitive root")
        k = self._gcd()
        return Monomial(tuple(e // k for e in self.exponents)), k

    def sort_key(self) -> tuple:
        return grlex_key(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.arity != other.arity:
            raise RingMismatchError(f"arity {self.arity} != {other.arity}")
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(tuple(e * k for e in self.exponents))

    def to_text(self) -> str:
        factors = [power_text(f"y{i + 1}", e) for i, e in enumerate(self.exponents) if e]
        return "*".join(factors) or "1"

    def __str__(self) -> str:
        return self.to_text()


def primitive_root(mu: Monomial) -> tuple[Monomial, int]:
    return mu.primitive_root()


def monomials_below(bound: tuple[int, ...]) -> list[Monomial]:
    """Mọi đơn thức bậc dương μ với ∂(μ) <= bound (từng tọa độ), giảm dần theo graded-lex."""
    ranges = [range(b + 1) for b in bound]
    found = []

    def walk(prefix, i):
        if i == len(ranges):
            if any(prefix):
                found.append(Monomial(tuple(prefix)))
            return
        for e in ranges[i]:
            walk(prefix + [e], i + 1)

    walk([], 0)
    return sorted(found, key=Monomial.sort_key, reverse=True)


# ========== ĐA THỨC THƯA (bọc sympy PolyRing) ==========

@lru_cache(maxsize=None)
def sympy_ring(names: tuple[str, ...], coeff_ring: CoeffRing) -> PolyRing:
    return PolyRing([Symbol(name) for name in names], coeff_ring.domain, grlex)


class SparsePolynomial:
    """
    Lớp cơ sở cho các đa thức có tập biến hữu hạn cố định, bọc một PolyElement
    của sympy. Giá trị bất biến: không có phép toán nào sửa đối tượng tại chỗ.
    Lớp con cung cấp _shape() (số biến và ý nghĩa) và _rebuild().
    """
    __slots__ = ("coeff_ring", "_element")

    def __init__(self, element, coeff_ring: CoeffRing):
        self.coeff_ring = coeff_ring
        self._element = element

    def _shape(self) -> tuple:
        raise NotImplementedError

    def _rebuild(self, element):
        raise NotImplementedError

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise RingMismatchError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other._shape() != self._shape():
            raise RingMismatchError(f"shape mismatch: {self._shape()} vs {other._shape()}")
        if other.coeff_ring != self.coeff_ring:
            raise RingMismatchError(f"coefficient ring mismatch: {self.coeff_ring} vs {other.coeff_ring}")

    @property
    def element(self):
        return self._element

    def exponent_terms(self) -> dict[tuple[int, ...], Any]:
        return dict(self._element.items())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Any]]:
        return sorted(self._element.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._element

    def __bool__(self) -> bool:
        return bool(self._element)

    def __len__(self) -> int:
        return len(self._element)

    def leading_term(self) -> tuple[tuple[int, ...], Any]:
        if self.is_zero():
            raise DomainError("zero polynomial has no leading term")
        # PolyRing dùng cùng thứ tự graded-lex
        return self._element.LT

    def total_degree(self) -> int:
        if self.is_zero():
            raise DomainError("degree of the zero polynomial is undefined")
        return max(sum(exps) for exps in self._element)

    def __add__(self, other):
        self._check(other)
        return self._rebuild(self._element + other._element)

    def __sub__(self, other):
        self._check(other)
        return self._rebuild(self._element - other._element)

    def __neg__(self):
        return self._rebuild(-self._element)

    def __mul__(self, other):
        self._check(other)
        return self._rebuild(self._element * other._element)

    def __pow__(self, k: int):
        return self._rebuild(self._element ** k)

    def scale(self, c):
        return self._rebuild(self._element * self.coeff_ring.coerce(c))

    def __eq__(self, other) -> bool:
        return (type(other) is type(self) and other._shape() == self._shape()
                and other.coeff_ring == self.coeff_ring and other._element == self._element)

    def __hash__(self) -> int:
        return hash((self._shape(), self.coeff_ring, frozenset(self._element.items())))

    def _format_with(self, monomial_text: Callable[[tuple[int, ...]], str]) -> str:
        pieces = []
        for exps, c in self.sorted_terms():
            negative, ctext = format_coefficient(c, self.coeff_ring)
            body = monomial_text(exps)
            pieces.append((negative, term_text(ctext, "" if body == "1" else body)))
        return join_terms(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text()!r})"

    def to_text(self) -> str:
        raise NotImplementedError


class Polynomial(SparsePolynomial):
    """Phần tử của A_R(m) = R[y_1..y_m]."""
    __slots__ = ("arity",)

    def __init__(self, element, arity: int, coeff_ring: CoeffRing):
        super().__init__(element, coeff_ring)
        self.arity = arity

    @staticmethod
    def ring_for(arity: int, coeff_ring: CoeffRing) -> PolyRing:
        return sympy_ring(tuple(f"y{i}" for i in range(1, arity + 1)), coeff_ring)

    def _shape(self) -> tuple:
        return ("y", self.arity)

    def _rebuild(self, element) -> "Polynomial":
        return Polynomial(element, self.arity, self.coeff_ring)

    @classmethod
    def zero(cls, arity: int, coeff_ring: CoeffRing) -> "Polynomial":
        return cls(cls.ring_for(arity, coeff_ring).zero, arity, coeff_ring)

    @classmethod
    def one(cls, arity: int, coeff_ring: CoeffRing) -> "Polynomial":
        return cls(cls.ring_for(arity, coeff_ring).one, arity, coeff_ring)

    @classmethod
    def from_terms(cls, terms: Mapping[Monomial, Any], arity: int, coeff_ring: CoeffRing) -> "Polynomial":
        ring = cls.ring_for(arity, coeff_ring)
        acc: dict[tuple[int, ...], Any] = {}
        for mu, c in terms.items():
            exps = mu.exponents if isinstance(mu, Monomial) else tuple(mu)
            if len(exps) != arity:
                raise RingMismatchError(f"monomial {exps} has arity {len(exps)}, expected {arity}")
            acc[exps] = acc.get(exps, coeff_ring.zero) + coeff_ring.coerce(c)
        return cls(ring.from_dict({k: v for k, v in acc.items() if v}), arity, coeff_ring)

    @classmethod
    def from_monomial(cls, mu: Monomial, coeff_ring: CoeffRing, coeff=1) -> "Polynomial":
        return cls.from_terms({mu: coeff}, mu.arity, coeff_ring)

    @classmethod
    def variable(cls, i: int, arity: int, coeff_ring: CoeffRing) -> "Polynomial":
        return cls.from_monomial(Monomial.variable(i, arity), coeff_ring)

    @property
    def terms(self) -> dict[Monomial, Any]:
        return {Monomial(exps): c for exps, c in self._element.items()}

    def monomials(self) -> list[Monomial]:
        return [Monomial(exps) for exps, _ in self.sorted_terms()]

    @property
    def constant_term(self):
        return self._element.get((0,) * self.arity, self.coeff_ring.zero)

    def multidegrees(self) -> set[tuple[int, ...]]:
        return set(self._element)

    def multidegree(self) -> tuple[int, ...]:
        """Đa bậc của hạng tử dẫn đầu (graded-lex); đa thức 0 không có đa bậc."""
        if self.is_zero():
            raise DomainError("multidegree of the zero polynomial is undefined")
        return self.leading_term()[0]

    def to_text(self) -> str:
        return self._format_with(lambda exps: Monomial(exps).to_text())


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


# ========== ĐA THỨC TỰ DO TRÊN BẢNG CHỮ CÁI KHÔNG GIỚI HẠN ==========

FreeKey = tuple[tuple[Hashable, int], ...]


class FreePolynomial:
    """
    Đa thức thưa trên một bảng chữ cái ký hiệu không bị chặn (e_1, e_2, ...
    hoặc e_{i,μ}). Mỗi đơn thức là một bộ (ký hiệu, số mũ) được sắp theo
    symbol_key; hệ số 0 không bao giờ được lưu.

    Lớp con định nghĩa symbol_key, format_symbol, symbol_weight và term_sort_key.
    """
    __slots__ = ("coeff_ring", "_terms")

    def __init__(self, terms: Mapping[FreeKey, Any], coeff_ring: CoeffRing):
        self.coeff_ring = coeff_ring
        acc: dict[FreeKey, Any] = {}
        for key, c in terms.items():
            key = self._normalize_key(key)
            c = coeff_ring.coerce(c)
            acc[key] = acc.get(key, coeff_ring.zero) + c
        self._terms = {k: v for k, v in acc.items() if v}

    # --- các điểm mở rộng cho lớp con ---

    @classmethod
    def symbol_key(cls, symbol) -> tuple:
        return (symbol,)

    @classmethod
    def format_symbol(cls, symbol) -> str:
        return str(symbol)

    @classmethod
    def symbol_weight(cls, symbol) -> int:
        return 1

    def term_sort_key(self, key: FreeKey) -> tuple:
        count = sum(e for _, e in key)
        return (-self.weight_of(key), -count,
                tuple(self.symbol_key(s) for s, e in key for _ in range(e)))

    def _new(self, terms: Mapping[FreeKey, Any], coeff_ring: CoeffRing | None = None):
        return type(self)(terms, coeff_ring or self.coeff_ring)

    # --- dựng ---

    def _normalize_key(self, key: Iterable[tuple[Hashable, int]]) -> FreeKey:
        merged: dict[Hashable, int] = {}
        for s, e in key:
            if e < 0:
                raise DomainError(f"negative exponent for {s}")
            if e:
                merged[s] = merged.get(s, 0) + e
        return tuple(sorted(merged.items(), key=lambda se: self.symbol_key(se[0])))

    def constant(self, c):
        return self._new({(): c})

    def symbol(self, s):
        return self._new({((s, 1),): 1})

    # --- truy vấn ---

    @property
    def terms(self) -> dict[FreeKey, Any]:
        return dict(self._terms)

    def symbols(self) -> set:
        return {s for key in self._terms for s, _ in key}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def weight_of(self, key: FreeKey) -> int:
        return sum(self.symbol_weight(s) * e for s, e in key)

    def weights(self) -> set[int]:
        return {self.weight_of(key) for key in self._terms}

    def sorted_terms(self) -> list[tuple[FreeKey, Any]]:
        return sorted(self._terms.items(), key=lambda kv: self.term_sort_key(kv[0]))

    # --- số học ---

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise RingMismatchError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.coeff_ring != self.coeff_ring:
            raise RingMismatchError("free polynomial ring mismatch")

    def __add__(self, other):
        self._check(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, self.coeff_ring.zero) + c
        return self._new(acc)

    def __neg__(self):
        return self._new({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        acc: dict[FreeKey, Any] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                key = self._normalize_key(k1 + k2)
                acc[key] = acc.get(key, self.coeff_ring.zero) + c1 * c2
        return self._new(acc)

    def __pow__(self, k: int):
        result = self.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        c = self.coeff_ring.coerce(c)
        return self._new({k: v * c for k, v in self._terms.items()})

    def change_ring(self, coeff_ring: CoeffRing):
        return self._new({k: coeff_ring.convert(self.coeff_ring.as_fraction(c))
                          for k, c in self._terms.items()}, coeff_ring)

    def evaluate(self, value_of: Callable[[Hashable], Any], one, convert: Callable[[Any], Any] | None = None):
        """
        Thay mỗi ký hiệu bằng value_of(ký hiệu) trong một vành đích bất kỳ có
        +, *, ** và scale(c). `one` là đơn vị của vành đích; `convert` đổi hệ số
        sang vành đích (mặc định giữ nguyên).
        """
        cache: dict[tuple[Hashable, int], Any] = {}
        result = None
        for key, c in self.sorted_terms():
            prod = one
            for s, e in key:
                if (s, e) not in cache:
                    cache[(s, e)] = value_of(s) ** e
                prod = prod * cache[(s, e)]
            term = prod.scale(convert(c) if convert else c)
            result = term if result is None else result + term
        return one.scale(0) if result is None else result

    # --- so sánh, in ---

    def __eq__(self, other) -> bool:
        return (type(other) is type(self) and other.coeff_ring == self.coeff_ring and other._terms == self._terms)

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.coeff_ring, frozenset(self._terms.items())))

    def key_text(self, key: FreeKey) -> str:
        return "*".join(power_text(self.format_symbol(s), e) for s, e in key)

    def to_text(self) -> str:
        pieces = []
        for key, c in self.sorted_terms():
            negative, ctext = format_coefficient(c, self.coeff_ring)
            pieces.append((negative, term_text(ctext, self.key_text(key))))
        return join_terms(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text()!r})"
