"""Text parsers for fields, rational functions, curves, points, places and tori.

Expressions use integers (reduced mod p), the variable ``t``, the field
generator ``u`` (nonprime fields only), ``+ - * / ^`` and parentheses.
Juxtaposition such as ``3t^2`` or ``2(t+1)`` means multiplication.
Curve right-hand sides may also use ``x``.
"""

from __future__ import annotations

import re

from sympy import factorint

from ..algebra import FieldSpec, Poly, RatFunc, field_make, is_irreducible
from ..elliptic import IDENTITY, CurveK, PointK, curve_make
from ..errors import BadPlace, ParseError
from ..gmtorus import TorusPoint, TorusSpec
from ..places import INFINITY, Place

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace remains
            break
        if m.group(1) is not None:
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _XPoly:
    """Polynomial in x with coefficients in K (x only appears in curve equations)."""

    __slots__ = ("spec", "c")

    def __init__(self, spec: FieldSpec, c: dict[int, RatFunc]):
        self.spec = spec
        self.c = {k: v for k, v in c.items() if not v.is_zero()}

    @classmethod
    def const(cls, f: RatFunc) -> "_XPoly":
        return cls(f.spec, {0: f})

    def degree(self) -> int:
        return max(self.c, default=-1)

    def constant(self) -> RatFunc | None:
        if self.degree() > 0:
            return None
        return self.c.get(0, RatFunc.zero(self.spec))

    def __add__(self, o):
        c = dict(self.c)
        for k, v in o.c.items():
            c[k] = c[k] + v if k in c else v
        return _XPoly(self.spec, c)

    def __neg__(self):
        return _XPoly(self.spec, {k: -v for k, v in self.c.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        c: dict[int, RatFunc] = {}
        for i, a in self.c.items():
            for j, b in o.c.items():
                c[i + j] = c[i + j] + a * b if i + j in c else a * b
        return _XPoly(self.spec, c)


class _Parser:
    def __init__(self, text: str, spec: FieldSpec, allow_x: bool):
        self.text = text
        self.spec = spec
        self.allow_x = allow_x
        self.toks = _tokenize(text)
        self.i = 0

    # -- helpers ---------------------------------------------------------------
    def peek(self):
        return self.toks[self.i]

    def advance(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.peek()[2] if pos is None else pos, self.text)

    def expect(self, value: str):
        kind, v, pos = self.peek()
        if kind != "op" or v != value:
            self.fail(f"expected {value!r}, found {v or 'end of input'!r}")
        self.advance()

    def _starts_primary(self) -> bool:
        kind, v, _ = self.peek()
        return kind in ("int", "name") or (kind == "op" and v == "(")

    # -- grammar ---------------------------------------------------------------
    def parse(self) -> _XPoly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        e = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            self.fail(f"unexpected {v!r}")
        return e

    def expr(self) -> _XPoly:
        acc = self.term()
        while True:
            kind, v, _ = self.peek()
            if kind == "op" and v in "+-":
                self.advance()
                rhs = self.term()
                acc = acc + rhs if v == "+" else acc - rhs
            else:
                return acc

    def term(self) -> _XPoly:
        acc = self.unary()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v == "*":
                self.advance()
                acc = acc * self.unary()
            elif kind == "op" and v == "/":
                self.advance()
                rhs = self.unary()
                d = rhs.constant()
                if d is None:
                    self.fail("division by an expression in x", pos)
                if d.is_zero():
                    self.fail("division by zero", pos)
                acc = _XPoly(self.spec, {k: c / d for k, c in acc.c.items()})
            elif self._starts_primary():
                acc = acc * self.power()
            else:
                return acc

    def unary(self) -> _XPoly:
        kind, v, _ = self.peek()
        if kind == "op" and v in "+-":
            self.advance()
            e = self.unary()
            return -e if v == "-" else e
        return self.power()

    def power(self) -> _XPoly:
        base = self.primary()
        kind, v, pos = self.peek()
        if kind == "op" and v == "^":
            self.advance()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.advance()
                sign = -1
            kind, e, epos = self.peek()
            if kind != "int":
                self.fail("exponent must be an integer literal")
            self.advance()
            return self._pow(base, sign * int(e), pos)
        return base

    def _pow(self, base: _XPoly, e: int, pos: int) -> _XPoly:
        c = base.constant()
        if e < 0 and c is None:
            self.fail("negative power of an expression in x", pos)
        if c is not None:
            if e < 0 and c.is_zero():
                self.fail("division by zero", pos)
            return _XPoly.const(c**e)
        acc = _XPoly.const(RatFunc.one(self.spec))
        for _ in range(e):
            acc = acc * base
        return acc

    def primary(self) -> _XPoly:
        kind, v, pos = self.advance()
        spec = self.spec
        if kind == "int":
            return _XPoly.const(RatFunc.from_int(spec, int(v)))
        if kind == "name":
            if v == "t":
                return _XPoly.const(RatFunc.t(spec))
            if v == "u":
                if spec.s == 1:
                    self.fail("'u' is only defined for nonprime fields", pos)
                return _XPoly.const(RatFunc.const(spec, spec.generator))
            if v == "x" and self.allow_x:
                return _XPoly(spec, {1: RatFunc.one(spec)})
            self.fail(f"unknown symbol {v!r}", pos)
        if kind == "op" and v == "(":
            e = self.expr()
            self.expect(")")
            return e
        self.fail(f"unexpected {v or 'end of input'!r}", pos)


def parse_ratfunc(text: str, spec: FieldSpec) -> RatFunc:
    """Parse an element of F_q(t); the result is normalized."""
    e = _Parser(text, spec, allow_x=False).parse()
    return e.constant()


def parse_field(text: str) -> FieldSpec:
    """"GF(25)", "GF(5^2)" or a bare prime power like "7"."""
    m = re.fullmatch(r"\s*(?:GF|F)?\(?\s*(\d+)\s*(?:\^\s*(\d+))?\s*\)?\s*", text, re.IGNORECASE)
    if not m:
        raise ParseError("expected a field such as GF(5) or GF(25)", 0, text)
    base = int(m.group(1))
    e = int(m.group(2) or 1)
    if base < 2:
        raise ParseError("field size must be at least 2", m.start(1), text)
    f = factorint(base)
    if len(f) != 1:
        raise ParseError(f"{base} is not a prime power", m.start(1), text)
    ((p, s),) = f.items()
    return field_make(p, s * e)


def _split_top(text: str, offset: int, full: str) -> list[tuple[str, int]]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((text[start:i], offset + start))
            start = i + 1
    parts.append((text[start:], offset + start))
    return parts


def _sub_parse(text: str, offset: int, full: str, spec: FieldSpec) -> RatFunc:
    try:
        return parse_ratfunc(text, spec)
    except ParseError as exc:
        raise ParseError(exc.message, offset + exc.pos, full) from None


def _parse_pair(text: str, spec: FieldSpec) -> tuple[RatFunc, RatFunc]:
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError("expected a pair '(a, b)'", lead, text)
    parts = _split_top(s[1:-1], lead + 1, text)
    if len(parts) != 2:
        raise ParseError("expected exactly two coordinates", lead, text)
    return tuple(_sub_parse(p, off, text, spec) for p, off in parts)  # type: ignore[return-value]


def parse_point(text: str, spec: FieldSpec) -> PointK:
    """"(x, y)" with RatFunc coordinates, or "O" for the identity."""
    if text.strip() in ("O", "0", "inf", "identity"):
        return IDENTITY
    x, y = _parse_pair(text, spec)
    return PointK(x, y)


def parse_curve(text: str, spec: FieldSpec) -> CurveK:
    """"y^2 = x^3 + (a)*x + (b)"; any expression cubic in x of that shape."""
    if "=" not in text:
        raise ParseError("expected 'y^2 = ...'", 0, text)
    lhs, rhs = text.split("=", 1)
    if re.sub(r"\s+", "", lhs) != "y^2":
        raise ParseError("left-hand side must be y^2", 0, text)
    off = len(lhs) + 1
    try:
        e = _Parser(rhs, spec, allow_x=True).parse()
    except ParseError as exc:
        raise ParseError(exc.message, off + exc.pos, text) from None
    zero = RatFunc.zero(spec)
    c = e.c
    if set(c) - {0, 1, 3} or c.get(3) != RatFunc.one(spec):
        raise ParseError("right-hand side must be x^3 + a*x + b", off, text)
    return curve_make(c.get(1, zero), c.get(0, zero))


def parse_place(text: str, spec: FieldSpec) -> Place:
    """"inf" or a monic irreducible such as "(t^2+3*t+4)"."""
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return INFINITY
    f = parse_ratfunc(text, spec)
    if not f.is_polynomial() or f.num.deg() < 1:
        raise BadPlace(f"{text!r} is not a nonconstant polynomial")
    pi: Poly = f.num
    if not pi.is_monic() or not is_irreducible(pi):
        raise BadPlace(f"{pi.to_text()} is not monic irreducible")
    return Place(pi)


def parse_torus(text: str, spec: FieldSpec) -> TorusSpec:
    """"norm1(d = t)" or just the expression for d."""
    m = re.fullmatch(r"\s*norm1\s*\(\s*d\s*=(.*)\)\s*", text)
    body, off = (m.group(1), m.start(1)) if m else (text, 0)
    return TorusSpec(_sub_parse(body, off, text, spec))


def parse_torus_point(text: str, spec: FieldSpec) -> TorusPoint:
    u, w = _parse_pair(text, spec)
    return TorusPoint(u, w)
