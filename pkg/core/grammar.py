# core/grammar.py
"""
Ngữ pháp văn bản cho mọi đối tượng miền: tách token bằng biểu thức chính quy,
phân tích đệ quy xuống. Khoảng trắng giữa các token được bỏ qua.

    biến        y<i>                         (1 <= i <= m)
    đơn thức    y1^2*y2   hoặc  1
    đa thức     3*y1^2 - y2      (tiền tố "q:" / "fp<p>:" chọn vành)
    chỉ số      E{y1:2, y2:1}
    phần tử     2*E{y1:2} + E{y1^2:1}
    sinh        e[2;y1]*e[1;y2] - (1/2)*e1[y1^2]
    sơ cấp      e2^2 - 2*e1*e3          tổng lũy thừa: p1^2 - p2
    cụ thể      x1(2)^3*x2(1)

Mọi lỗi là ParseError kèm vị trí ký tự (0-based) trong chuỗi gốc.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from core.errors import DomainError, MsymError, ParseError
from core.ringcore import CoeffRing, Monomial, Polynomial

KINDS = ("monomial", "polynomial", "orbit-index", "orbit-element", "generator-poly",
         "elementary", "power-sum", "concrete")

_TOKEN_SPEC = [
    ("ORBIT", r"E\{"),
    ("LINEAR", r"e1\["),
    ("GEN", r"e\["),
    ("ELEM", r"e\d+"),
    ("PSUM", r"p\d+"),
    ("XVAR", r"x\d+\(\d+\)"),
    ("YVAR", r"y\d+"),
    ("NUMBER", r"\d+"),
    ("OP", r"[-+*^/(){}\[\];:,]"),
    ("SPACE", r"\s+"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))
_RING_PREFIX = re.compile(r"\s*(z|q|fp\d+)\s*:")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str, offset: int = 0) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos + offset, text)
        if match.lastgroup != "SPACE":
            tokens.append(Token(match.lastgroup, match.group(), pos + offset))
        pos = match.end()
    tokens.append(Token("END", "", len(text) + offset))
    return tokens


class _Parser:
    """Bộ phân tích dùng chung; `atom` đọc một nguyên tố đặc thù của từng loại đối tượng."""

    def __init__(self, text: str, offset: int, m: int | None, n: int | None):
        self.source = text
        self.tokens = tokenize(text[offset:], offset)
        self.index = 0
        self.m = m
        self.n = n
        self.max_variable = 0

    # --- tiện ích token ---

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def error(self, reason: str, token: Token | None = None) -> ParseError:
        token = token or self.current
        return ParseError(reason, token.position, self.source)

    def accept(self, text: str) -> Token | None:
        if self.current.kind == "OP" and self.current.text == text:
            token = self.current
            self.index += 1
            return token
        return None

    def expect(self, text: str) -> Token:
        token = self.accept(text)
        if token is None:
            found = self.current.text or "end of input"
            raise self.error(f"expected '{text}' but found '{found}'")
        return token

    def take(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            found = self.current.text or "end of input"
            raise self.error(f"expected {what} but found '{found}'")
        token = self.current
        self.index += 1
        return token

    def finish(self) -> None:
        if self.current.kind != "END":
            raise self.error(f"unexpected '{self.current.text}'")

    # --- khối dựng ---

    def number(self) -> int:
        return int(self.take("NUMBER", "a number").text)

    def variable_index(self, token: Token) -> int:
        i = int(token.text[1:])
        if i < 1 or (self.m is not None and i > self.m):
            raise self.error(f"variable {token.text} out of range for m={self.m}", token)
        self.max_variable = max(self.max_variable, i)
        return i

    def monomial_exponents(self) -> dict[int, int]:
        """y_i^e (* y_j^f)* hoặc '1'; trả về {i: e}."""
        exps: dict[int, int] = {}
        if self.current.kind == "NUMBER" and self.current.text == "1":
            self.index += 1
            return exps
        while True:
            token = self.take("YVAR", "a variable y<i>")
            i = self.variable_index(token)
            e = self.number() if self.accept("^") else 1
            exps[i] = exps.get(i, 0) + e
            if not (self.current.kind == "OP" and self.current.text == "*"
                    and self.tokens[self.index + 1].kind == "YVAR"):
                return exps
            self.index += 1

    def orbit_index(self):
        self.take("ORBIT", "'E{'")
        entries: list[tuple[dict[int, int], int, Token]] = []
        if not self.accept("}"):
            while True:
                start = self.current
                exps = self.monomial_exponents()
                if not exps:
                    raise self.error("orbit index keys must have positive degree", start)
                self.expect(":")
                mult_token = self.current
                k = self.number()
                if k <= 0:
                    raise self.error("multiplicity must be positive", mult_token)
                entries.append((exps, k, start))
                if self.accept("}"):
                    break
                self.expect(",")
        return entries

    def coefficient(self) -> Fraction:
        if self.current.kind == "NUMBER":
            return Fraction(self.number())
        self.expect("(")
        sign = -1 if self.accept("-") else 1
        num = self.number()
        den = self.number() if self.accept("/") else 1
        if den == 0:
            raise self.error("zero denominator")
        self.expect(")")
        return Fraction(sign * num, den)

    def expression(self, atom: Callable[[], Any]) -> list[tuple[Fraction, list[tuple[Any, int]], Token]]:
        """Tổng có dấu của các hạng tử; mỗi hạng tử là hệ số và danh sách (nguyên tố, số mũ)."""
        terms = []
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        while True:
            start = self.current
            coeff = Fraction(sign)
            factors: list[tuple[Any, int]] = []
            while True:
                if self.current.kind == "NUMBER" or (self.current.kind == "OP" and self.current.text == "("):
                    coeff *= self.coefficient()
                else:
                    item = atom()
                    e = self.number() if self.accept("^") else 1
                    factors.append((item, e))
                if not self.accept("*"):
                    break
            terms.append((coeff, factors, start))
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                return terms


def _split_ring(text: str, coeff: CoeffRing | None) -> tuple[CoeffRing, int]:
    match = _RING_PREFIX.match(text)
    if match is None:
        return coeff or CoeffRing.integers(), 0
    try:
        return CoeffRing.parse_spec(match.group(1)), match.end()
    except DomainError as exc:
        raise ParseError(str(exc), match.start(1), text) from exc


def _convert(ring: CoeffRing, value: Fraction, parser: _Parser, token: Token):
    try:
        return ring.convert(value)
    except DomainError as exc:
        raise parser.error(str(exc), token) from exc


def parse(text: str, kind: str, m: int | None = None, n: int | None = None,
          coeff: CoeffRing | None = None):
    """
    Đọc `text` thành đối tượng thuộc loại `kind`. m (và n cho 'concrete') khai báo
    số biến; khi bỏ trống, m được suy ra từ chỉ số biến lớn nhất.
    """
    if kind not in KINDS:
        raise MsymError(f"unknown kind '{kind}' (expected one of {', '.join(KINDS)})")
    ring, offset = _split_ring(text, coeff)
    parser = _Parser(text, offset, m, n)
    try:
        result = _PARSERS[kind](parser, ring)
    except ParseError:
        raise
    except DomainError as exc:
        raise parser.error(str(exc)) from exc
    parser.finish()
    return result


def _resolve_m(parser: _Parser) -> int:
    return parser.m if parser.m is not None else max(parser.max_variable, 1)


def _from_exps(exps: dict[int, int], m: int) -> Monomial:
    return Monomial(tuple(exps.get(i, 0) for i in range(1, m + 1)))


def _parse_monomial(parser: _Parser, ring: CoeffRing) -> Monomial:
    exps = parser.monomial_exponents()
    return _from_exps(exps, _resolve_m(parser))


def _parse_polynomial(parser: _Parser, ring: CoeffRing) -> Polynomial:
    def atom():
        token = parser.take("YVAR", "a variable y<i>")
        return parser.variable_index(token)

    terms = parser.expression(atom)
    m = _resolve_m(parser)
    acc: dict[Monomial, Any] = {}
    for coeff, factors, start in terms:
        exps: dict[int, int] = {}
        for i, e in factors:
            exps[i] = exps.get(i, 0) + e
        mu = _from_exps(exps, m)
        acc[mu] = acc.get(mu, ring.zero) + _convert(ring, coeff, parser, start)
    return Polynomial.from_terms(acc, m, ring)


def _parse_orbit_index(parser: _Parser, ring: CoeffRing):
    from analysis.orbitring import OrbitIndex
    entries = parser.orbit_index()
    m = _resolve_m(parser)
    mapping: dict[Monomial, int] = {}
    for exps, k, start in entries:
        mu = _from_exps(exps, m)
        if mu in mapping:
            raise parser.error(f"duplicate key {mu.to_text()}", start)
        mapping[mu] = k
    return OrbitIndex.of(mapping, m)


def _parse_orbit_element(parser: _Parser, ring: CoeffRing):
    from analysis.orbitring import MultiSymElement, OrbitIndex

    def atom():
        token = parser.current
        if token.kind != "ORBIT":
            raise parser.error(f"expected 'E{{' but found '{token.text or 'end of input'}'")
        return parser.orbit_index(), token

    terms = parser.expression(atom)
    m = _resolve_m(parser)
    acc: dict[OrbitIndex, Any] = {}
    for coeff, factors, start in terms:
        if len(factors) > 1 or any(e != 1 for _, e in factors):
            raise parser.error("orbit terms cannot be multiplied in text", start)
        if factors:
            (entries, _), _ = factors[0]
            alpha = OrbitIndex.of({_from_exps(exps, m): k for exps, k, _ in entries}, m)
        else:
            alpha = OrbitIndex.empty(m)
        acc[alpha] = acc.get(alpha, ring.zero) + _convert(ring, coeff, parser, start)
    return MultiSymElement(acc, m, ring)


def _parse_generator_poly(parser: _Parser, ring: CoeffRing):
    from analysis.presentation import GeneratorPoly, GeneratorSymbol, LinearSymbol

    def atom():
        token = parser.current
        if token.kind == "GEN":
            parser.index += 1
            degree_token = parser.current
            degree = parser.number()
            if degree < 1:
                raise parser.error("generator degree must be positive", degree_token)
            parser.expect(";")
            start = parser.current
            exps = parser.monomial_exponents()
            parser.expect("]")
            return ("gen", degree, exps, start)
        if token.kind == "LINEAR":
            parser.index += 1
            start = parser.current
            exps = parser.monomial_exponents()
            parser.expect("]")
            return ("lin", 1, exps, start)
        raise parser.error(f"expected 'e[' or 'e1[' but found '{token.text or 'end of input'}'")

    terms = parser.expression(atom)
    m = _resolve_m(parser)
    acc: dict[tuple, Any] = {}
    for coeff, factors, start in terms:
        key = []
        for (tag, degree, exps, where), e in factors:
            mu = _from_exps(exps, m)
            if tag == "gen":
                if not mu.is_primitive:
                    raise parser.error(f"generator monomial {mu.to_text()} must be primitive", where)
                key.append((GeneratorSymbol(degree, mu), e))
            else:
                if mu.is_constant:
                    raise parser.error("linear generator needs a monomial of positive degree", where)
                key.append((LinearSymbol(mu), e))
        frozen = tuple(key)
        acc[frozen] = acc.get(frozen, ring.zero) + _convert(ring, coeff, parser, start)
    return GeneratorPoly(acc, ring)


def _indexed_parser(token_kind: str, build: Callable[[], type]):
    def run(parser: _Parser, ring: CoeffRing):
        cls = build()

        def atom():
            token = parser.current
            if token.kind != token_kind:
                raise parser.error(f"expected '{cls.prefix}<i>' but found '{token.text or 'end of input'}'")
            parser.index += 1
            i = int(token.text[1:])
            if i < 1:
                raise parser.error("symbol index must be positive", token)
            return i

        acc: dict[tuple, Any] = {}
        for coeff, factors, start in parser.expression(atom):
            key = tuple(factors)
            acc[key] = acc.get(key, ring.zero) + _convert(ring, coeff, parser, start)
        return cls(acc, ring)

    return run


def _elementary_class():
    from analysis.symfun import ElementaryPoly
    return ElementaryPoly


def _power_sum_class():
    from analysis.symfun import PowerSumPoly
    return PowerSumPoly


def _parse_concrete(parser: _Parser, ring: CoeffRing):
    from analysis.concrete import ConcretePoly

    def atom():
        token = parser.take("XVAR", "a variable x<i>(<j>)")
        i_text, j_text = token.text[1:-1].split("(")
        i, j = int(i_text), int(j_text)
        if i < 1 or (parser.m is not None and i > parser.m):
            raise parser.error(f"variable {token.text} out of range for m={parser.m}", token)
        if j < 1 or (parser.n is not None and j > parser.n):
            raise parser.error(f"slot {j} out of range for n={parser.n}", token)
        return (i, j)

    terms = parser.expression(atom)
    m = parser.m if parser.m is not None else max([i for _, fs, _ in terms for (i, _), _ in fs] + [1])
    n = parser.n if parser.n is not None else max([j for _, fs, _ in terms for (_, j), _ in fs] + [1])
    acc: dict[tuple[int, ...], Any] = {}
    for coeff, factors, start in terms:
        flat = [0] * (n * m)
        for (i, j), e in factors:
            flat[(j - 1) * m + (i - 1)] += e
        key = tuple(flat)
        acc[key] = acc.get(key, ring.zero) + _convert(ring, coeff, parser, start)
    return ConcretePoly.from_terms(acc, n, m, ring)


_PARSERS: dict[str, Callable[[_Parser, CoeffRing], Any]] = {
    "monomial": _parse_monomial,
    "polynomial": _parse_polynomial,
    "orbit-index": _parse_orbit_index,
    "orbit-element": _parse_orbit_element,
    "generator-poly": _parse_generator_poly,
    "elementary": _indexed_parser("ELEM", _elementary_class),
    "power-sum": _indexed_parser("PSUM", _power_sum_class),
    "concrete": _parse_concrete,
}


def format(obj, with_ring: bool = False) -> str:
    """Dạng văn bản chính tắc; with_ring thêm tiền tố vành khi vành không phải Z."""
    text = obj.to_text()
    ring = getattr(obj, "coeff_ring", None)
    if with_ring and ring is not None and ring.kind != "z":
        prefix = "q" if ring.kind == "q" else f"fp{ring.prime}"
        return f"{prefix}:{text}"
    return text
