"""Recursive-descent parser for the engine's expression grammar.

Grammar (loosest to tightest binding):

    expr    := star (('+' | '-') star)*
    star    := product ('**' product)*          # '**' is the star product
    product := factor ('*' factor)*
    factor  := '-' factor | power
    power   := atom ('^' UINT)?
    atom    := NUMBER | 'i' | VAR | 'exp' '(' expr ')' | '(' expr ')'

Numbers take an optional 'i' suffix (2, 1.5, 2i, 1.5e-3i); variables are
x1/x2 (cartesian frame) or z/zbar (complex frame) and the two frames may
not mix.  'exp' arguments must be affine in the variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import EngineError

VARIABLES = ("x1", "x2", "z", "zbar")
_FRAME_OF = {"x1": "cartesian", "x2": "cartesian", "z": "complex", "zbar": "complex"}

_NUMBER_RE = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class ParseError(EngineError):
    """Syntax or validation diagnostic with position and expected tokens."""

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...]):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        hint = ", ".join(expected)
        super().__init__(f"{message} at line {line}, column {column} (expected: {hint})")


@dataclass(frozen=True)
class Token:
    kind: str  # 'number' | 'name' | 'op' | 'end'
    text: str
    value: complex | None
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            word = m.group(0)
            if word.endswith("i"):
                value = complex(0.0, float(word[:-1]))
            else:
                value = complex(float(word), 0.0)
            tokens.append(Token("number", word, value, line, col))
            i = m.end()
            col += len(word)
            continue
        m = _NAME_RE.match(text, i)
        if m:
            word = m.group(0)
            tokens.append(Token("name", word, None, line, col))
            i = m.end()
            col += len(word)
            continue
        if text.startswith("**", i):
            tokens.append(Token("op", "**", None, line, col))
            i += 2
            col += 2
            continue
        if ch in "+-*^()":
            tokens.append(Token("op", ch, None, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(
            f"unexpected character {ch!r}",
            line,
            col,
            expected=("number", "variable", "operator", "'('"),
        )
    tokens.append(Token("end", "", None, line, col))
    return tokens


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    pass


def _pos_field():
    return field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Num(Node):
    value: complex
    pos: tuple[int, int] = _pos_field()


@dataclass(frozen=True)
class Var(Node):
    name: str
    pos: tuple[int, int] = _pos_field()


@dataclass(frozen=True)
class Neg(Node):
    arg: Node
    pos: tuple[int, int] = _pos_field()


@dataclass(frozen=True)
class Add(Node):
    left: Node
    right: Node
    pos: tuple[int, int] = _pos_field()


@dataclass(frozen=True)
class Sub(Node):
    left: Node
    right: Node
    pos: tuple[int, int] = _pos_field()


@dataclass(frozen=True)
class Mul(Node):
    left: Node
    right: Node
    pos: tuple[int, int] = _pos_field()


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int
    pos: tuple[int, int] = _pos_field()


@dataclass(frozen=True)
class Star(Node):
    left: Node
    right: Node
    pos: tuple[int, int] = _pos_field()


@dataclass(frozen=True)
class Exp(Node):
    arg: Node
    pos: tuple[int, int] = _pos_field()


@dataclass(frozen=True)
class Expression:
    """A parsed expression plus the frame its variables selected."""

    root: Node
    frame: str | None
    text: str


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.index = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        tok = self.cur
        self.index += 1
        return tok

    def at_op(self, *ops: str) -> bool:
        return self.cur.kind == "op" and self.cur.text in ops

    def fail(self, message: str, expected: tuple[str, ...]):
        tok = self.cur
        raise ParseError(message, tok.line, tok.column, expected)

    def parse(self) -> Node:
        node = self.expr()
        if self.cur.kind != "end":
            self.fail(f"unexpected trailing input {self.cur.text!r}", ("end of input", "operator"))
        return node

    def expr(self) -> Node:
        node = self.star()
        while self.at_op("+", "-"):
            op = self.advance()
            right = self.star()
            cls = Add if op.text == "+" else Sub
            node = cls(node, right, pos=(op.line, op.column))
        return node

    def star(self) -> Node:
        node = self.product()
        while self.at_op("**"):
            op = self.advance()
            node = Star(node, self.product(), pos=(op.line, op.column))
        return node

    def product(self) -> Node:
        node = self.factor()
        while self.at_op("*"):
            op = self.advance()
            node = Mul(node, self.factor(), pos=(op.line, op.column))
        return node

    def factor(self) -> Node:
        if self.at_op("-"):
            op = self.advance()
            return Neg(self.factor(), pos=(op.line, op.column))
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if not self.at_op("^"):
            return base
        op = self.advance()
        tok = self.cur
        if tok.kind != "number" or tok.value.imag != 0.0 or tok.value.real != int(tok.value.real):
            self.fail(
                "exponent must be a non-negative integer literal",
                ("non-negative integer",),
            )
        self.advance()
        return Pow(base, int(tok.value.real), pos=(op.line, op.column))

    def atom(self) -> Node:
        tok = self.cur
        if tok.kind == "number":
            self.advance()
            return Num(tok.value, pos=(tok.line, tok.column))
        if tok.kind == "name":
            self.advance()
            if tok.text == "i":
                return Num(1j, pos=(tok.line, tok.column))
            if tok.text in VARIABLES:
                return Var(tok.text, pos=(tok.line, tok.column))
            if tok.text == "exp":
                if not self.at_op("("):
                    self.fail("exp must be called as exp(...)", ("'('",))
                self.advance()
                arg = self.expr()
                if not self.at_op(")"):
                    self.fail("unclosed exp(", ("')'",))
                self.advance()
                return Exp(arg, pos=(tok.line, tok.column))
            raise ParseError(
                f"unknown name {tok.text!r}",
                tok.line,
                tok.column,
                expected=VARIABLES + ("i", "exp"),
            )
        if self.at_op("("):
            self.advance()
            node = self.expr()
            if not self.at_op(")"):
                self.fail("unclosed parenthesis", ("')'",))
            self.advance()
            return node
        self.fail(
            f"unexpected token {tok.text!r}" if tok.kind != "end" else "unexpected end of input",
            ("number", "variable", "'exp'", "'('", "'-'"),
        )


def _walk(node: Node):
    yield node
    for name in ("arg", "left", "right", "base"):
        child = getattr(node, name, None)
        if isinstance(child, Node):
            yield from _walk(child)


def _infer_frame(root: Node) -> str | None:
    frame = None
    for node in _walk(root):
        if isinstance(node, Var):
            f = _FRAME_OF[node.name]
            if frame is None:
                frame = f
            elif frame != f:
                raise ParseError(
                    f"variable {node.name!r} mixes frames (expression already uses "
                    f"{frame} variables)",
                    node.pos[0],
                    node.pos[1],
                    expected=("x1", "x2") if frame == "cartesian" else ("z", "zbar"),
                )
    return frame


def _affine_degree(node: Node) -> int:
    """Total degree of a star-free, exp-free subtree; used to validate
    exp arguments."""
    if isinstance(node, Num):
        return 0
    if isinstance(node, Var):
        return 1
    if isinstance(node, Neg):
        return _affine_degree(node.arg)
    if isinstance(node, (Add, Sub)):
        return max(_affine_degree(node.left), _affine_degree(node.right))
    if isinstance(node, Mul):
        return _affine_degree(node.left) + _affine_degree(node.right)
    if isinstance(node, Pow):
        return _affine_degree(node.base) * node.exponent
    return -1  # Star or Exp: not allowed inside exp at all


def _validate_exp_args(root: Node):
    for node in _walk(root):
        if isinstance(node, Exp):
            deg = _affine_degree(node.arg)
            if deg < 0:
                raise ParseError(
                    "exp arguments may not contain exp or the star operator",
                    node.pos[0],
                    node.pos[1],
                    expected=("affine expression in the variables",),
                )
            if deg > 1:
                raise ParseError(
                    "exp argument must be affine in the variables",
                    node.pos[0],
                    node.pos[1],
                    expected=("affine expression in the variables",),
                )


def parse_expression(text: str) -> Expression:
    """Parse text into an Expression; raises ParseError with line/column
    and an expected-token set on any syntax or validation failure."""
    root = _Parser(tokenize(text)).parse()
    frame = _infer_frame(root)
    _validate_exp_args(root)
    return Expression(root=root, frame=frame, text=text)


# -- pretty printer ----------------------------------------------------------

_PREC_ADD, _PREC_STAR, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5, 6


def format_complex(value: complex) -> str:
    """Grammar-compatible complex literal: 2, 1.5, 2i, -1.5i, (1+2i)."""
    re_, im = value.real, value.imag

    def num(x: float) -> str:
        if x == int(x) and abs(x) < 1e15:
            return str(int(x))
        return repr(x)

    if im == 0.0:
        return num(re_)
    if re_ == 0.0:
        if im == 1.0:
            return "i"
        if im == -1.0:
            return "-i"
        return num(im) + "i"
    sign = "+" if im >= 0 else "-"
    mag = abs(im)
    imag = "i" if mag == 1.0 else num(mag) + "i"
    return f"({num(re_)}{sign}{imag})"


def pretty(node: Node, ctx_prec: int = 0) -> str:
    """Canonical text form; parse(pretty(parse(s))) == parse(s)."""
    if isinstance(node, Num):
        s = format_complex(node.value)
        prec = _PREC_NEG if s.startswith("-") else _PREC_ATOM
    elif isinstance(node, Var):
        s, prec = node.name, _PREC_ATOM
    elif isinstance(node, Neg):
        s, prec = "-" + pretty(node.arg, _PREC_NEG), _PREC_NEG
    elif isinstance(node, Add):
        s = f"{pretty(node.left, _PREC_ADD)} + {pretty(node.right, _PREC_ADD + 1)}"
        prec = _PREC_ADD
    elif isinstance(node, Sub):
        s = f"{pretty(node.left, _PREC_ADD)} - {pretty(node.right, _PREC_ADD + 1)}"
        prec = _PREC_ADD
    elif isinstance(node, Star):
        s = f"{pretty(node.left, _PREC_STAR)} ** {pretty(node.right, _PREC_STAR + 1)}"
        prec = _PREC_STAR
    elif isinstance(node, Mul):
        s = f"{pretty(node.left, _PREC_MUL)}*{pretty(node.right, _PREC_MUL + 1)}"
        prec = _PREC_MUL
    elif isinstance(node, Pow):
        s = f"{pretty(node.base, _PREC_ATOM)}^{node.exponent}"
        prec = _PREC_POW
    elif isinstance(node, Exp):
        s, prec = f"exp({pretty(node.arg)})", _PREC_ATOM
    else:
        raise TypeError(f"not an AST node: {node!r}")
    if prec < ctx_prec:
        return f"({s})"
    return s
