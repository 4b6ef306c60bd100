"""Expression trees for quaternion-valued functions of (z1, z2).

The surface language is parsed by a small recursive-descent parser:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ['-'] atom ['^' int]
    atom   := 'z1' | 'z2' | 'i' | 'j' | number | 'conj' '(' expr ')' | '(' expr ')'

Multiplication is quaternionic, so operand order is preserved everywhere,
and p/q means p * rinv(q).  Trees are immutable; the operator overloads
build new nodes with constant folding (real-constant arithmetic plus the
0/1 identities) and nothing more.

A tree containing no UnitJ node denotes a complex-valued function of
z1, conj(z1), z2, conj(z2); lowering produces pairs of such trees.
"""
from __future__ import annotations

import math
import numbers
import re
from dataclasses import dataclass

from .errors import ParseError

_VAR_NAMES = ("z1", "z2")
RESERVED_WORDS = frozenset({"z1", "z2", "i", "j", "conj"})


class QExpr:
    """Base node; subclasses are frozen dataclasses."""

    def __add__(self, other):
        return _add(self, _coerce(other))

    def __radd__(self, other):
        return _add(_coerce(other), self)

    def __sub__(self, other):
        return _sub(self, _coerce(other))

    def __rsub__(self, other):
        return _sub(_coerce(other), self)

    def __mul__(self, other):
        return _mul(self, _coerce(other))

    def __rmul__(self, other):
        return _mul(_coerce(other), self)

    def __truediv__(self, other):
        return _div(self, _coerce(other))

    def __rtruediv__(self, other):
        return _div(_coerce(other), self)

    def __neg__(self):
        return _neg(self)

    def __pow__(self, n: int):
        return _pow(self, n)

    def conj(self):
        return _conj(self)


@dataclass(frozen=True)
class Var(QExpr):
    name: str

    def __post_init__(self):
        if self.name not in _VAR_NAMES:
            raise ValueError(f"unknown variable {self.name!r}")


@dataclass(frozen=True)
class ConjVar(QExpr):
    name: str

    def __post_init__(self):
        if self.name not in _VAR_NAMES:
            raise ValueError(f"unknown variable {self.name!r}")


@dataclass(frozen=True)
class RealConst(QExpr):
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError("constants must be finite")


@dataclass(frozen=True)
class UnitI(QExpr):
    pass


@dataclass(frozen=True)
class UnitJ(QExpr):
    pass


@dataclass(frozen=True)
class Add(QExpr):
    left: QExpr
    right: QExpr


@dataclass(frozen=True)
class Sub(QExpr):
    left: QExpr
    right: QExpr


@dataclass(frozen=True)
class Mul(QExpr):
    left: QExpr
    right: QExpr


@dataclass(frozen=True)
class Div(QExpr):
    left: QExpr
    right: QExpr


@dataclass(frozen=True)
class Neg(QExpr):
    operand: QExpr


@dataclass(frozen=True)
class Pow(QExpr):
    base: QExpr
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent < 1:
            raise ValueError("exponent must be a positive integer")


@dataclass(frozen=True)
class Conj(QExpr):
    operand: QExpr


def _is_zero(e: QExpr) -> bool:
    return isinstance(e, RealConst) and e.value == 0.0


def _is_one(e: QExpr) -> bool:
    return isinstance(e, RealConst) and e.value == 1.0


def _coerce(v) -> QExpr:
    if isinstance(v, QExpr):
        return v
    if isinstance(v, numbers.Real):
        return RealConst(float(v))
    if isinstance(v, complex):
        return const(v)
    raise TypeError(f"cannot use {type(v).__name__} in an expression")


def const(v: complex | float) -> QExpr:
    """Embed a numeric constant; complex values become re + im*i."""
    v = complex(v)
    if v.imag == 0.0:
        return RealConst(v.real)
    imag = _mul(RealConst(v.imag), UnitI())
    if v.real == 0.0:
        return imag
    return Add(RealConst(v.real), imag)


def _add(a: QExpr, b: QExpr) -> QExpr:
    if isinstance(a, RealConst) and isinstance(b, RealConst):
        return RealConst(a.value + b.value)
    if _is_zero(a):
        return b
    if _is_zero(b):
        return a
    return Add(a, b)


def _sub(a: QExpr, b: QExpr) -> QExpr:
    if isinstance(a, RealConst) and isinstance(b, RealConst):
        return RealConst(a.value - b.value)
    if _is_zero(b):
        return a
    if _is_zero(a):
        return _neg(b)
    return Sub(a, b)


def _mul(a: QExpr, b: QExpr) -> QExpr:
    if isinstance(a, RealConst) and isinstance(b, RealConst):
        return RealConst(a.value * b.value)
    if _is_zero(a) or _is_zero(b):
        return RealConst(0.0)
    if _is_one(a):
        return b
    if _is_one(b):
        return a
    return Mul(a, b)


def _div(a: QExpr, b: QExpr) -> QExpr:
    if _is_one(b):
        return a
    if _is_zero(a):
        return RealConst(0.0)
    if isinstance(a, RealConst) and isinstance(b, RealConst) and b.value != 0.0:
        return RealConst(a.value / b.value)
    return Div(a, b)


def _neg(a: QExpr) -> QExpr:
    if isinstance(a, RealConst):
        return RealConst(-a.value)
    return Neg(a)


def _pow(a: QExpr, n: int) -> QExpr:
    if not isinstance(n, int) or n < 1:
        raise ValueError("exponent must be a positive integer")
    if n == 1:
        return a
    if isinstance(a, RealConst):
        return RealConst(a.value**n)
    return Pow(a, n)


def _conj(a: QExpr) -> QExpr:
    if isinstance(a, RealConst):
        return a
    if isinstance(a, Var):
        return ConjVar(a.name)
    if isinstance(a, ConjVar):
        return Var(a.name)
    if isinstance(a, Conj):
        return a.operand
    if isinstance(a, UnitI):
        return Neg(UnitI())
    if isinstance(a, UnitJ):
        return Neg(UnitJ())
    return Conj(a)


def has_unit_j(e: QExpr) -> bool:
    match e:
        case UnitJ():
            return True
        case Add(l, r) | Sub(l, r) | Mul(l, r) | Div(l, r):
            return has_unit_j(l) or has_unit_j(r)
        case Neg(x) | Conj(x):
            return has_unit_j(x)
        case Pow(b, _):
            return has_unit_j(b)
        case _:
            return False


# --------------------------------------------------------------------------
# tokenizer / parser


_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.lastgroup is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", len(text) - len(stripped))
        tokens.append(_Token(m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self) -> _Token:
        return self.tokens[self.idx]

    def advance(self) -> _Token:
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def accept_op(self, *ops: str) -> _Token | None:
        tok = self.peek()
        if tok.kind == "op" and tok.text in ops:
            return self.advance()
        return None

    def expect_op(self, op: str) -> _Token:
        tok = self.advance()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}, found {tok.text!r}" if tok.text else f"expected {op!r}", tok.pos)
        return tok

    def parse_expr(self) -> QExpr:
        node = self.parse_term()
        while True:
            tok = self.accept_op("+", "-")
            if tok is None:
                return node
            rhs = self.parse_term()
            node = Add(node, rhs) if tok.text == "+" else Sub(node, rhs)

    def parse_term(self) -> QExpr:
        node = self.parse_factor()
        while True:
            tok = self.accept_op("*", "/")
            if tok is None:
                return node
            rhs = self.parse_factor()
            node = Mul(node, rhs) if tok.text == "*" else Div(node, rhs)

    def parse_factor(self) -> QExpr:
        negate = self.accept_op("-") is not None
        node = self.parse_atom()
        if self.accept_op("^") is not None:
            node = Pow(node, self.parse_exponent())
        if negate:
            if isinstance(node, RealConst):
                return RealConst(-node.value)
            return Neg(node)
        return node

    def parse_exponent(self) -> int:
        tok = self.advance()
        if tok.kind != "number":
            raise ParseError("exponent must be a positive integer", tok.pos)
        try:
            value = int(tok.text)
        except ValueError:
            raise ParseError("exponent must be a positive integer", tok.pos) from None
        if value < 1:
            raise ParseError("exponent must be a positive integer", tok.pos)
        return value

    def parse_atom(self) -> QExpr:
        tok = self.advance()
        if tok.kind == "number":
            return RealConst(float(tok.text))
        if tok.kind == "name":
            if tok.text in _VAR_NAMES:
                return Var(tok.text)
            if tok.text == "i":
                return UnitI()
            if tok.text == "j":
                return UnitJ()
            if tok.text == "conj":
                self.expect_op("(")
                inner = self.parse_expr()
                self.expect_op(")")
                if isinstance(inner, Var):
                    return ConjVar(inner.name)
                return Conj(inner)
            raise ParseError(f"unknown name {tok.text!r}", tok.pos)
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.pos)
        raise ParseError(f"unexpected token {tok.text!r}", tok.pos)


def parse(text: str) -> QExpr:
    """Parse an expression; raises ParseError with the failing position."""
    parser = _Parser(text)
    node = parser.parse_expr()
    tail = parser.peek()
    if tail.kind != "end":
        raise ParseError(f"unexpected token {tail.text!r}", tail.pos)
    return node


# --------------------------------------------------------------------------
# printer

_LEVEL_ADD = 2
_LEVEL_MUL = 4
_LEVEL_NEG = 5
_LEVEL_POW = 6
_LEVEL_ATOM = 8


def _level(e: QExpr) -> int:
    match e:
        case Add() | Sub():
            return _LEVEL_ADD
        case Mul() | Div():
            return _LEVEL_MUL
        case Neg():
            return _LEVEL_NEG
        case RealConst(value):
            # copysign catches -0.0, whose repr also starts with a minus
            return _LEVEL_ATOM if math.copysign(1.0, value) > 0 else _LEVEL_NEG
        case Pow():
            return _LEVEL_POW
        case _:
            return _LEVEL_ATOM


def _render(e: QExpr, min_level: int) -> str:
    if _level(e) < min_level:
        return "(" + _render(e, 0) + ")"
    match e:
        case Var(name):
            return name
        case ConjVar(name):
            return f"conj({name})"
        case RealConst(value):
            return repr(value)
        case UnitI():
            return "i"
        case UnitJ():
            return "j"
        case Add(l, r):
            return f"{_render(l, _LEVEL_ADD)} + {_render(r, _LEVEL_ADD + 1)}"
        case Sub(l, r):
            return f"{_render(l, _LEVEL_ADD)} - {_render(r, _LEVEL_ADD + 1)}"
        case Mul(l, r):
            return f"{_render(l, _LEVEL_MUL)} * {_render(r, _LEVEL_MUL + 1)}"
        case Div(l, r):
            return f"{_render(l, _LEVEL_MUL)} / {_render(r, _LEVEL_MUL + 1)}"
        case Neg(x):
            # a bare negative literal would re-parse as a folded constant
            if isinstance(x, RealConst):
                return f"-({_render(x, 0)})"
            return "-" + _render(x, _LEVEL_POW)
        case Pow(b, n):
            return f"{_render(b, _LEVEL_ATOM)}^{n}"
        case Conj(x):
            return f"conj({_render(x, 0)})"
    raise TypeError(f"not an expression node: {e!r}")


def unparse(e: QExpr) -> str:
    """Deterministic rendering; parse(unparse(e)) is structurally e."""
    return _render(e, 0)


# --------------------------------------------------------------------------
# definition files

_DEF_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)$")


def parse_definitions(text: str) -> dict[str, QExpr]:
    """Read `name = <expression>` lines; '#' starts a comment.

    Returns definitions in file order.  Names may not collide with the
    reserved words of the grammar or with each other.
    """
    defs: dict[str, QExpr] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _DEF_RE.match(line)
        if m is None:
            raise ParseError(f"line {lineno}: expected `name = <expression>`")
        name, body = m.group(1), m.group(2)
        if name in RESERVED_WORDS:
            raise ParseError(f"line {lineno}: {name!r} is a reserved word")
        if name in defs:
            raise ParseError(f"line {lineno}: duplicate definition of {name!r}")
        try:
            defs[name] = parse(body)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc.args[0]}") from None
    return defs
