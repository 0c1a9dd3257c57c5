# analysis/concrete.py
"""
Vành cụ thể A_R(n,m) = R[x_i(j)] với tác động S_n hoán vị các slot j.

Biến được sắp theo slot: x1(1), ..., xm(1), x1(2), ..., xm(n). Một số mũ trải
phẳng có độ dài n*m; khối thứ j (m số) là đơn thức đặt tại slot j.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Any, Mapping, Sequence

from sympy.utilities.iterables import multiset_permutations

from core.errors import DomainError, RingMismatchError
from core.ringcore import CoeffRing, Monomial, Polynomial, SparsePolynomial, power_text, sympy_ring
from analysis.orbitring import MultiSymElement, OrbitIndex


def _variable_names(n: int, m: int) -> tuple[str, ...]:
    return tuple(f"x{i}({j})" for j in range(1, n + 1) for i in range(1, m + 1))


class ConcretePoly(SparsePolynomial):
    """Phần tử của A_R(n,m)."""
    __slots__ = ("n", "m")

    def __init__(self, element, n: int, m: int, coeff_ring: CoeffRing):
        super().__init__(element, coeff_ring)
        self.n = n
        self.m = m

    @staticmethod
    def ring_for(n: int, m: int, coeff_ring: CoeffRing):
        return sympy_ring(_variable_names(n, m), coeff_ring)

    def _shape(self) -> tuple:
        return ("x", self.n, self.m)

    def _rebuild(self, element) -> "ConcretePoly":
        return ConcretePoly(element, self.n, self.m, self.coeff_ring)

    @classmethod
    def zero(cls, n: int, m: int, coeff_ring: CoeffRing) -> "ConcretePoly":
        return cls(cls.ring_for(n, m, coeff_ring).zero, n, m, coeff_ring)

    @classmethod
    def one(cls, n: int, m: int, coeff_ring: CoeffRing) -> "ConcretePoly":
        return cls(cls.ring_for(n, m, coeff_ring).one, n, m, coeff_ring)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, ...], Any], n: int, m: int,
                   coeff_ring: CoeffRing) -> "ConcretePoly":
        acc: dict[tuple[int, ...], Any] = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != n * m:
                raise RingMismatchError(f"exponent vector of length {len(exps)}, expected {n * m}")
            acc[exps] = acc.get(exps, coeff_ring.zero) + coeff_ring.coerce(c)
        ring = cls.ring_for(n, m, coeff_ring)
        return cls(ring.from_dict({k: v for k, v in acc.items() if v}), n, m, coeff_ring)

    @classmethod
    def variable(cls, i: int, j: int, n: int, m: int, coeff_ring: CoeffRing) -> "ConcretePoly":
        if not (1 <= i <= m and 1 <= j <= n):
            raise DomainError(f"variable x{i}({j}) out of range for n={n}, m={m}")
        exps = [0] * (n * m)
        exps[(j - 1) * m + (i - 1)] = 1
        return cls.from_terms({tuple(exps): 1}, n, m, coeff_ring)

    def term_multidegree(self, exps: Sequence[int]) -> tuple[int, ...]:
        """Tổng theo cột của ma trận số mũ n×m."""
        return tuple(sum(exps[j * self.m + i] for j in range(self.n)) for i in range(self.m))

    def multidegrees(self) -> set[tuple[int, ...]]:
        return {self.term_multidegree(exps) for exps in self._element}

    def monomial_text(self, exps: Sequence[int]) -> str:
        factors = []
        for j in range(self.n):
            for i in range(self.m):
                e = exps[j * self.m + i]
                if e:
                    factors.append(power_text(f"x{i + 1}({j + 1})", e))
        return "*".join(factors) or "1"

    def to_text(self) -> str:
        return self._format_with(self.monomial_text)


def _blocks(exps: Sequence[int], n: int, m: int) -> list[tuple[int, ...]]:
    return [tuple(exps[j * m:(j + 1) * m]) for j in range(n)]


@dataclass(frozen=True)
class SlotSubstitution:
    """f(j): ảnh của f ∈ A_R(m) đặt tại slot j, chỉ dùng các biến x_1(j), ..., x_m(j)."""
    source: Polynomial
    slot: int

    def apply(self, n: int) -> ConcretePoly:
        if not 1 <= self.slot <= n:
            raise DomainError(f"slot {self.slot} out of range 1..{n}")
        m = self.source.arity
        offset = (self.slot - 1) * m
        terms = {}
        for exps, c in self.source.exponent_terms().items():
            flat = [0] * (n * m)
            flat[offset:offset + m] = exps
            terms[tuple(flat)] = c
        return ConcretePoly.from_terms(terms, n, m, self.source.coeff_ring)


def substitute_slot(f: Polynomial, j: int, n: int) -> ConcretePoly:
    """Ảnh của f qua y_i ↦ x_i(j)."""
    return SlotSubstitution(f, j).apply(n)


def _validate_permutation(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise DomainError(f"{sigma} is not a permutation of 1..{n}")
    return sigma


def apply_permutation(p: ConcretePoly, sigma: Sequence[int]) -> ConcretePoly:
    """x_i(j) ↦ x_i(σ(j)); sigma[j-1] là σ(j)."""
    n, m = p.n, p.m
    sigma = _validate_permutation(sigma, n)
    terms = {}
    for exps, c in p.exponent_terms().items():
        flat = [0] * (n * m)
        for j, block in enumerate(_blocks(exps, n, m)):
            target = (sigma[j] - 1) * m
            flat[target:target + m] = block
        terms[tuple(flat)] = c
    return ConcretePoly.from_terms(terms, n, m, p.coeff_ring)


def is_invariant(p: ConcretePoly) -> bool:
    """Bất biến dưới các chuyển vị kề (j, j+1), chúng sinh ra S_n."""
    base = list(range(1, p.n + 1))
    for j in range(p.n - 1):
        sigma = base[:]
        sigma[j], sigma[j + 1] = sigma[j + 1], sigma[j]
        if apply_permutation(p, sigma) != p:
            return False
    return True


def elementary_tuple(fs: Sequence[Polynomial], alphas: Sequence[int], n: int) -> ConcretePoly:
    """
    Hệ số của t_1^{α_1}...t_k^{α_k} trong Π_{i=1}^n (1 + Σ_j t_j f_j(i)).

    Hàm sinh được cắt cụt: số mũ của t_j không vượt quá α_j.
    """
    if len(fs) != len(alphas):
        raise DomainError(f"length mismatch: {len(fs)} arguments, {len(alphas)} multiplicities")
    if not fs:
        raise DomainError("elementary_tuple needs at least one argument")
    if any(a < 0 for a in alphas):
        raise DomainError("multiplicities must be nonnegative")
    m, ring = fs[0].arity, fs[0].coeff_ring
    for f in fs:
        if f.arity != m or f.coeff_ring != ring:
            raise RingMismatchError("arguments must share arity and coefficient ring")
    alphas = tuple(alphas)
    if sum(alphas) > n:
        return ConcretePoly.zero(n, m, ring)
    state: dict[tuple[int, ...], ConcretePoly] = {(0,) * len(alphas): ConcretePoly.one(n, m, ring)}
    for i in range(1, n + 1):
        images = [substitute_slot(f, i, n) for f in fs]
        nxt: dict[tuple[int, ...], ConcretePoly] = {}
        for tv, poly in state.items():
            nxt[tv] = nxt[tv] + poly if tv in nxt else poly
            for j, image in enumerate(images):
                if tv[j] < alphas[j]:
                    up = tv[:j] + (tv[j] + 1,) + tv[j + 1:]
                    step = poly * image
                    nxt[up] = nxt[up] + step if up in nxt else step
        state = nxt
    return state.get(alphas, ConcretePoly.zero(n, m, ring))


def orbit_sum(alpha: OrbitIndex, n: int, coeff_ring: CoeffRing | None = None) -> ConcretePoly:
    """
    e_α trong A(n,m): tổng trên mọi cách chọn các tập slot rời nhau có thứ tự,
    tập thứ t có α(μ_t) phần tử và mang đơn thức μ_t. Bằng 0 khi |α| > n.
    """
    ring = coeff_ring or CoeffRing.integers()
    m = alpha.arity
    if alpha.size > n:
        return ConcretePoly.zero(n, m, ring)
    terms: dict[tuple[int, ...], Any] = {}
    entries = alpha.entries

    def place(t: int, free: tuple[int, ...], flat: list[int]):
        if t == len(entries):
            terms[tuple(flat)] = 1
            return
        mu, k = entries[t]
        for chosen in combinations(free, k):
            for j in chosen:
                flat[j * m:(j + 1) * m] = mu.exponents
            rest = tuple(j for j in free if j not in chosen)
            place(t + 1, rest, flat)
            for j in chosen:
                flat[j * m:(j + 1) * m] = (0,) * m

    place(0, tuple(range(n)), [0] * (n * m))
    return ConcretePoly.from_terms(terms, n, m, ring)


def orbit_type(exps: Sequence[int], n: int, m: int) -> OrbitIndex:
    """Chỉ số quỹ đạo của một đơn thức cụ thể: đếm đơn thức theo từng slot."""
    counts: dict[Monomial, int] = {}
    for block in _blocks(exps, n, m):
        if any(block):
            mu = Monomial(block)
            counts[mu] = counts.get(mu, 0) + 1
    return OrbitIndex.of(counts, m)


def to_orbit_basis(p: ConcretePoly) -> MultiSymElement:
    """Tọa độ duy nhất của p trong cơ sở {e_α : |α| <= n}."""
    if not is_invariant(p):
        raise DomainError("not S_n-invariant")
    coords: dict[OrbitIndex, Any] = {}
    rest = p
    while not rest.is_zero():
        exps, c = rest.leading_term()
        alpha = orbit_type(exps, p.n, p.m)
        coords[alpha] = c
        rest = rest - orbit_sum(alpha, p.n, p.coeff_ring).scale(c)
    return MultiSymElement(coords, p.m, p.coeff_ring)


def project_slots(p: ConcretePoly, n_small: int) -> ConcretePoly:
    """π^h_n: x_i(j) ↦ 0 với j > n_small."""
    if not 0 <= n_small <= p.n:
        raise DomainError(f"cannot project A({p.n},{p.m}) to {n_small} slots")
    cut = n_small * p.m
    terms = {exps[:cut]: c for exps, c in p.exponent_terms().items() if not any(exps[cut:])}
    return ConcretePoly.from_terms(terms, n_small, p.m, p.coeff_ring)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomials_of_multidegree(n: int, m: int, a: Sequence[int]) -> list[tuple[int, ...]]:
    """Mọi đơn thức cụ thể có đa bậc a (ma trận số mũ với tổng cột a), giảm dần."""
    if len(a) != m:
        raise RingMismatchError(f"multidegree {tuple(a)} has length {len(a)}, expected {m}")
    found = []
    for columns in product(*(list(_compositions(a_i, n)) for a_i in a)):
        flat = [0] * (n * m)
        for i, column in enumerate(columns):
            for j, e in enumerate(column):
                flat[j * m + i] = e
        found.append(tuple(flat))
    return sorted(found, key=lambda e: (sum(e), e), reverse=True)


def symmetrize_monomial(exps: Sequence[int], n: int, m: int,
                        coeff_ring: CoeffRing | None = None) -> ConcretePoly:
    """Tổng quỹ đạo của một đơn thức cụ thể: mọi hoán vị phân biệt của các hàng slot."""
    ring = coeff_ring or CoeffRing.integers()
    rows = _blocks(exps, n, m)
    terms = {tuple(e for row in perm for e in row): 1 for perm in multiset_permutations(rows)}
    return ConcretePoly.from_terms(terms, n, m, ring)
