# analysis/linalg.py
"""Đại số tuyến tính chính xác cho các chứng nhận: hạng trên Q / F_p và dạng chuẩn Smith trên Z."""
from __future__ import annotations

from typing import Any, Sequence

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from core.errors import DomainError
from core.ringcore import CoeffRing


def _to_matrix(rows: Sequence[Sequence[Any]], ring: CoeffRing, width: int | None = None) -> DomainMatrix:
    rows = [list(r) for r in rows]
    if width is None:
        width = len(rows[0]) if rows else 0
    if any(len(r) != width for r in rows):
        raise DomainError("rows must have equal length")
    data = [[ring.coerce(x) for x in r] for r in rows]
    return DomainMatrix(data, (len(data), width), ring.domain)


def rank_over(field: CoeffRing, rows: Sequence[Sequence[Any]]) -> int:
    """Hạng chính xác của họ vectơ hàng trên Q hoặc F_p."""
    if not field.is_field:
        field = CoeffRing.rationals()
    if not rows or not len(rows[0]):
        return 0
    return _to_matrix(rows, field).rank()


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Các nhân tử bất biến d_1 | d_2 | ... (gồm cả các số 0) của một ma trận nguyên."""
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return ()
    factors = [abs(int(d)) for d in invariant_factors(_to_matrix(rows, CoeffRing.integers()))]
    # invariant_factors đã là chuỗi chia hết; các số 0 được đưa về cuối
    return tuple(d for d in factors if d) + tuple(d for d in factors if not d)


def spans_lattice(matrix: Sequence[Sequence[int]], dimension: int) -> bool:
    """Các hàng sinh Z^dimension khi và chỉ khi có đúng `dimension` nhân tử bất biến bằng 1."""
    if dimension == 0:
        return True
    factors = smith_normal_form(matrix)
    return len(factors) >= dimension and all(d == 1 for d in factors[:dimension])


class RowSpace:
    """
    Không gian hàng tăng dần trên một trường: giữ các hàng ở dạng bậc thang
    (chốt -> hàng đã chuẩn hóa) để thêm từng vectơ và biết nó có độc lập không.
    """

    def __init__(self, field: CoeffRing, width: int):
        if not field.is_field:
            raise DomainError(f"{field} is not a field")
        self.field = field
        self.width = width
        self._pivots: dict[int, list] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def is_full(self) -> bool:
        return self.rank == self.width

    def reduce(self, row: Sequence[Any]) -> list:
        vec = [self.field.coerce(x) for x in row]
        if len(vec) != self.width:
            raise DomainError(f"row of length {len(vec)}, expected {self.width}")
        for col in sorted(self._pivots):
            c = vec[col]
            if c:
                pivot_row = self._pivots[col]
                vec = [v - c * p for v, p in zip(vec, pivot_row)]
        return vec

    def add(self, row: Sequence[Any]) -> bool:
        vec = self.reduce(row)
        lead = next((i for i, v in enumerate(vec) if v), None)
        if lead is None:
            return False
        inv = self.field.one / vec[lead]
        vec = [v * inv for v in vec]
        for col, other in self._pivots.items():
            c = other[lead]
            if c:
                self._pivots[col] = [o - c * v for o, v in zip(other, vec)]
        self._pivots[lead] = vec
        return True
