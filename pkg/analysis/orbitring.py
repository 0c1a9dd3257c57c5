# analysis/orbitring.py
"""
Vành trừu tượng A(∞,m): cơ sở quỹ đạo e_α, công thức tích (không giới hạn |γ|),
phép chiếu π_n và liệt kê cơ sở theo đa bậc.

Một phần tử cơ sở được đánh chỉ số bởi OrbitIndex α: ánh xạ hữu hạn từ đơn thức
bậc dương sang bội số dương. Trong A(n,m), e_α khác 0 khi và chỉ khi |α| <= n.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Any, Iterator, Mapping, Sequence

from core.errors import DomainError, RingMismatchError
from core.ringcore import (
    CoeffRing,
    Monomial,
    Polynomial,
    format_coefficient,
    grlex_key,
    join_terms,
    monomials_below,
    term_text,
)


# ========== CHỈ SỐ QUỸ ĐẠO ==========

@dataclass(frozen=True)
class OrbitIndex:
    """
    α: các cặp (đơn thức, bội số) sắp giảm dần theo graded-lex của đơn thức.
    arity là m; chỉ số rỗng E{} là đơn vị của vành.
    """
    entries: tuple[tuple[Monomial, int], ...]
    arity: int

    def __post_init__(self):
        merged: dict[Monomial, int] = {}
        for mu, k in self.entries:
            if mu.arity != self.arity:
                raise RingMismatchError(f"monomial {mu} has arity {mu.arity}, expected {self.arity}")
            if mu.is_constant:
                raise DomainError("orbit index keys must have positive degree")
            if k <= 0:
                raise DomainError(f"multiplicity of {mu} must be positive, got {k}")
            merged[mu] = merged.get(mu, 0) + int(k)
        ordered = tuple(sorted(merged.items(), key=lambda mk: mk[0].sort_key(), reverse=True))
        object.__setattr__(self, "entries", ordered)

    @classmethod
    def of(cls, mapping: Mapping[Monomial, int], arity: int) -> "OrbitIndex":
        return cls(tuple(mapping.items()), arity)

    @classmethod
    def empty(cls, arity: int) -> "OrbitIndex":
        return cls((), arity)

    @classmethod
    def single(cls, mu: Monomial, k: int = 1) -> "OrbitIndex":
        return cls(((mu, k),), mu.arity)

    @property
    def size(self) -> int:
        """|α| = tổng các bội số."""
        return sum(k for _, k in self.entries)

    @property
    def multidegree(self) -> tuple[int, ...]:
        total = [0] * self.arity
        for mu, k in self.entries:
            for i, e in enumerate(mu.exponents):
                total[i] += k * e
        return tuple(total)

    @property
    def support(self) -> list[Monomial]:
        return [mu for mu, _ in self.entries]

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.entries)

    def multiplicity(self, mu: Monomial) -> int:
        return self.as_dict().get(mu, 0)

    def sort_key(self) -> tuple:
        return (grlex_key(self.multidegree),
                tuple((mu.sort_key(), k) for mu, k in self.entries))

    def to_text(self) -> str:
        return "E{" + ", ".join(f"{mu.to_text()}:{k}" for mu, k in self.entries) + "}"

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class TaggedTuple:
    """Danh sách đối số (đơn thức, bội số), có thể lặp đơn thức; dạng trước chuẩn hóa."""
    arguments: tuple[tuple[Monomial, int], ...]

    @property
    def is_reduced(self) -> bool:
        mons = [mu for mu, _ in self.arguments]
        return len(set(mons)) == len(mons)


def canonicalize(t: TaggedTuple | Sequence[tuple[Monomial, int]], arity: int | None = None) -> tuple[int, OrbitIndex]:
    """
    Gộp các đối số trùng nhau: hệ số là tích các hệ số đa thức
    (Σ phần)! / Π phần! trên mỗi nhóm được gộp.
    """
    args = t.arguments if isinstance(t, TaggedTuple) else tuple(t)
    if arity is None:
        if not args:
            raise DomainError("arity required for an empty tuple")
        arity = args[0][0].arity
    groups: dict[Monomial, list[int]] = {}
    for mu, k in args:
        if k <= 0:
            raise DomainError("multiplicities must be positive")
        groups.setdefault(mu, []).append(k)
    coefficient = 1
    for parts in groups.values():
        running = 0
        for part in parts:
            running += part
            coefficient *= math.comb(running, part)
    return coefficient, OrbitIndex.of({mu: sum(parts) for mu, parts in groups.items()}, arity)


# ========== PHẦN TỬ CỦA A(∞,m) ==========

class MultiSymElement:
    """Tổ hợp tuyến tính hữu hạn của các e_α trên vành hệ số R."""
    __slots__ = ("arity", "coeff_ring", "_terms")

    def __init__(self, terms: Mapping[OrbitIndex, Any], arity: int, coeff_ring: CoeffRing):
        self.arity = arity
        self.coeff_ring = coeff_ring
        acc: dict[OrbitIndex, Any] = {}
        for alpha, c in terms.items():
            if alpha.arity != arity:
                raise RingMismatchError(f"orbit index {alpha} has arity {alpha.arity}, expected {arity}")
            acc[alpha] = acc.get(alpha, coeff_ring.zero) + coeff_ring.coerce(c)
        self._terms = {a: c for a, c in acc.items() if c}

    @classmethod
    def zero(cls, arity: int, coeff_ring: CoeffRing) -> "MultiSymElement":
        return cls({}, arity, coeff_ring)

    @classmethod
    def one(cls, arity: int, coeff_ring: CoeffRing) -> "MultiSymElement":
        return cls({OrbitIndex.empty(arity): 1}, arity, coeff_ring)

    @classmethod
    def basis(cls, alpha: OrbitIndex, coeff_ring: CoeffRing) -> "MultiSymElement":
        return cls({alpha: 1}, alpha.arity, coeff_ring)

    def _new(self, terms: Mapping[OrbitIndex, Any]) -> "MultiSymElement":
        return MultiSymElement(terms, self.arity, self.coeff_ring)

    def _check(self, other: "MultiSymElement") -> None:
        if not isinstance(other, MultiSymElement):
            raise RingMismatchError(f"cannot combine MultiSymElement with {type(other).__name__}")
        if other.arity != self.arity or other.coeff_ring != self.coeff_ring:
            raise RingMismatchError(
                f"A(∞,{self.arity}) over {self.coeff_ring} vs A(∞,{other.arity}) over {other.coeff_ring}")

    @property
    def terms(self) -> dict[OrbitIndex, Any]:
        return dict(self._terms)

    def coefficient(self, alpha: OrbitIndex):
        return self._terms.get(alpha, self.coeff_ring.zero)

    def sorted_terms(self) -> list[tuple[OrbitIndex, Any]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "MultiSymElement") -> "MultiSymElement":
        self._check(other)
        acc = dict(self._terms)
        for a, c in other._terms.items():
            acc[a] = acc.get(a, self.coeff_ring.zero) + c
        return self._new(acc)

    def __neg__(self) -> "MultiSymElement":
        return self._new({a: -c for a, c in self._terms.items()})

    def __sub__(self, other: "MultiSymElement") -> "MultiSymElement":
        return self + (-other)

    def __mul__(self, other: "MultiSymElement") -> "MultiSymElement":
        return multiply(self, other)

    def __pow__(self, k: int) -> "MultiSymElement":
        result = MultiSymElement.one(self.arity, self.coeff_ring)
        for _ in range(k):
            result = multiply(result, self)
        return result

    def scale(self, c) -> "MultiSymElement":
        c = self.coeff_ring.coerce(c)
        return self._new({a: v * c for a, v in self._terms.items()})

    def change_ring(self, coeff_ring: CoeffRing) -> "MultiSymElement":
        return MultiSymElement({a: coeff_ring.convert(self.coeff_ring.as_fraction(c))
                                for a, c in self._terms.items()}, self.arity, coeff_ring)

    def multidegrees(self) -> set[tuple[int, ...]]:
        return {a.multidegree for a in self._terms}

    def homogeneous_component(self, a: Sequence[int]) -> "MultiSymElement":
        a = tuple(a)
        return self._new({alpha: c for alpha, c in self._terms.items() if alpha.multidegree == a})

    def coordinates(self, basis: Sequence[OrbitIndex]) -> list:
        """Tọa độ theo một danh sách cơ sở; báo lỗi nếu có hạng tử nằm ngoài danh sách."""
        position = {alpha: i for i, alpha in enumerate(basis)}
        out = [self.coeff_ring.zero] * len(basis)
        for alpha, c in self._terms.items():
            if alpha not in position:
                raise DomainError(f"{alpha} is not in the given basis")
            out[position[alpha]] = c
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiSymElement) and other.arity == self.arity
                and other.coeff_ring == self.coeff_ring and other._terms == self._terms)

    def __hash__(self) -> int:
        return hash((self.arity, self.coeff_ring, frozenset(self._terms.items())))

    def to_text(self) -> str:
        pieces = []
        for alpha, c in self.sorted_terms():
            negative, ctext = format_coefficient(c, self.coeff_ring)
            pieces.append((negative, term_text(ctext, alpha.to_text())))
        return join_terms(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiSymElement({self.to_text()!r})"


# ========== CÔNG THỨC TÍCH ==========

def _gamma_matrices(alpha_mults: Sequence[int], beta_mults: Sequence[int]) -> Iterator[list[list[int]]]:
    """
    Liệt kê các ma trận trong γ_ij (i, j >= 1) với tổng hàng <= α_i và tổng cột <= β_j
    bằng DFS theo từng ô, giữ ngân sách hàng và cột. Thứ tự: từ điển trên ma trận trải phẳng.
    """
    k, h = len(alpha_mults), len(beta_mults)
    cells = [(i, j) for i in range(k) for j in range(h)]
    row_left = list(alpha_mults)
    col_left = list(beta_mults)
    gamma = [[0] * h for _ in range(k)]

    def walk(pos: int):
        if pos == len(cells):
            yield [row[:] for row in gamma]
            return
        i, j = cells[pos]
        for value in range(min(row_left[i], col_left[j]) + 1):
            gamma[i][j] = value
            row_left[i] -= value
            col_left[j] -= value
            yield from walk(pos + 1)
            row_left[i] += value
            col_left[j] += value
        gamma[i][j] = 0

    yield from walk(0)


def basis_product(alpha: OrbitIndex, beta: OrbitIndex) -> dict[OrbitIndex, int]:
    """Tích e_α · e_β trong A_Z(∞,m), hệ số nguyên; kết quả được ghi nhớ."""
    if alpha.arity != beta.arity:
        raise RingMismatchError(f"arity {alpha.arity} != {beta.arity}")
    key = (alpha, beta) if alpha.sort_key() <= beta.sort_key() else (beta, alpha)
    return _PRODUCT_CACHE.get_or_compute(key, lambda: _compute_basis_product(*key))


def _compute_basis_product(alpha: OrbitIndex, beta: OrbitIndex) -> dict[OrbitIndex, int]:
    fs, a_mults = zip(*alpha.entries) if alpha.entries else ((), ())
    gs, b_mults = zip(*beta.entries) if beta.entries else ((), ())
    out: dict[OrbitIndex, int] = {}
    for gamma in _gamma_matrices(a_mults, b_mults):
        args: list[tuple[Monomial, int]] = []
        for i, f in enumerate(fs):
            rest = a_mults[i] - sum(gamma[i])
            if rest:
                args.append((f, rest))
        for j, g in enumerate(gs):
            rest = b_mults[j] - sum(gamma[i][j] for i in range(len(fs)))
            if rest:
                args.append((g, rest))
        for i, f in enumerate(fs):
            for j, g in enumerate(gs):
                if gamma[i][j]:
                    args.append((f * g, gamma[i][j]))
        c, index = canonicalize(args, alpha.arity)
        out[index] = out.get(index, 0) + c
    return out


class _ProductCache:
    """Bộ nhớ đệm dùng chung: đọc đồng thời, chèn độc quyền."""

    def __init__(self):
        self._lock = threading.Lock()
        self._store: dict[tuple[OrbitIndex, OrbitIndex], dict[OrbitIndex, int]] = {}

    def get_or_compute(self, key, compute):
        found = self._store.get(key)
        if found is not None:
            return found
        value = compute()
        with self._lock:
            return self._store.setdefault(key, value)

    def clear(self) -> None:
        with self._lock:
            self._store.clear()

    def __len__(self) -> int:
        return len(self._store)


_PRODUCT_CACHE = _ProductCache()


def multiply(x: MultiSymElement, y: MultiSymElement) -> MultiSymElement:
    """Mở rộng song tuyến tính của tích cơ sở."""
    x._check(y)
    ring = x.coeff_ring
    acc: dict[OrbitIndex, Any] = {}
    for alpha, c1 in x._terms.items():
        for beta, c2 in y._terms.items():
            c = c1 * c2
            for gamma, n_gamma in basis_product(alpha, beta).items():
                acc[gamma] = acc.get(gamma, ring.zero) + c * ring.convert(n_gamma)
    return x._new(acc)


def project_n(x: MultiSymElement, n: int) -> MultiSymElement:
    """π_n: bỏ mọi hạng tử có |α| > n."""
    return x._new({alpha: c for alpha, c in x._terms.items() if alpha.size <= n})


# ========== LIỆT KÊ CƠ SỞ ==========

def enumerate_basis(a: Sequence[int], n_cap: int | None = None) -> list[OrbitIndex]:
    """
    Mọi α với ∂(α) = a và |α| <= n_cap (None là không giới hạn), mỗi α đúng một lần.

    Duyệt các đơn thức chia hết a theo graded-lex giảm dần, bội số từ lớn đến nhỏ.
    """
    a = tuple(a)
    arity = len(a)
    mons = monomials_below(a)
    found: list[OrbitIndex] = []

    def walk(i: int, remaining: tuple[int, ...], count: int, chosen: list[tuple[Monomial, int]]):
        if not any(remaining):
            found.append(OrbitIndex(tuple(chosen), arity))
            return
        if i == len(mons):
            return
        mu = mons[i]
        top = min(r // e for r, e in zip(remaining, mu.exponents) if e)
        if n_cap is not None:
            top = min(top, n_cap - count)
        for t in range(top, -1, -1):
            rest = tuple(r - t * e for r, e in zip(remaining, mu.exponents))
            if t:
                chosen.append((mu, t))
            walk(i + 1, rest, count + t, chosen)
            if t:
                chosen.pop()

    walk(0, a, 0, [])
    return found


def multidegrees_up_to(m: int, max_total: int) -> list[tuple[int, ...]]:
    """Mọi a ∈ N^m với 1 <= |a| <= max_total: tổng bậc tăng dần, rồi graded-lex giảm dần."""
    out = []
    for total in range(1, max_total + 1):
        level = []
        for cut in combinations_with_replacement(range(m), total):
            a = [0] * m
            for i in cut:
                a[i] += 1
            level.append(tuple(a))
        out.extend(sorted(set(level), reverse=True))
    return out


def expand_e_k_of(f: Polynomial, k: int) -> MultiSymElement:
    """e_k(f) = Σ_{|α|=k} (Π_μ λ_μ^{α(μ)}) e_α với f = Σ λ_μ μ thuộc iđêan tăng cường."""
    ring = f.coeff_ring
    if f.constant_term:
        raise DomainError("e_k(f) requires f with zero constant term")
    if k == 0:
        return MultiSymElement.one(f.arity, ring)
    support = sorted(f.terms.items(), key=lambda mc: mc[0].sort_key(), reverse=True)
    acc: dict[OrbitIndex, Any] = {}
    for choice in combinations_with_replacement(range(len(support)), k):
        counts: dict[int, int] = {}
        for idx in choice:
            counts[idx] = counts.get(idx, 0) + 1
        c = ring.one
        for idx, t in counts.items():
            c = c * support[idx][1] ** t
        alpha = OrbitIndex.of({support[idx][0]: t for idx, t in counts.items()}, f.arity)
        acc[alpha] = acc.get(alpha, ring.zero) + c
    return MultiSymElement(acc, f.arity, ring)


def sigma(g, arity: int, coeff_ring: CoeffRing | None = None) -> MultiSymElement:
    """
    σ_m: ảnh của một đa thức sinh trong A(∞,m). Ký hiệu e_{i,μ} ↦ e_{(i)}(μ);
    ký hiệu tuyến tính e1[μ] ↦ e_1(μ).
    """
    ring = coeff_ring or g.coeff_ring
    one = MultiSymElement.one(arity, ring)
    return g.evaluate(lambda s: MultiSymElement.basis(OrbitIndex.single(s.base, s.degree), ring), one)
