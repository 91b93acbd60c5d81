"""차트 변수 u1..um 위의 스칼라 수식: AST, 파서, 정규 출력기.

문법(우선순위 높은 순):
    ``^`` (오른쪽 결합) > 단항 ``-`` > ``*`` ``/`` > ``+`` ``-`` (왼쪽 결합)

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | power
    power := atom ('^' unary)?
    atom  := number | 'pi' | u<i> | func '(' expr ')' | '(' expr ')'

함수는 sin, cos, tan, atan, exp, log, sqrt 로 고정입니다.

예시:
    >>> parse("u1^2 + 3*u2", 2)
    Ok(value=Binary(op=<BinaryOp.ADD: '+'>, ...))
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import StrEnum
from typing import Final

from shared.primitives.io import IO
from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import (
    DomainError,
    expr_syntax_err,
    expr_unknown_identifier_err,
    expr_variable_range_err,
)

__all__ = [
    "UnaryFn",
    "BinaryOp",
    "Const",
    "Var",
    "Unary",
    "Binary",
    "ExprNode",
    "parse",
    "to_text",
    "variables",
]


class UnaryFn(StrEnum):
    SIN = "sin"
    COS = "cos"
    TAN = "tan"
    ATAN = "atan"
    EXP = "exp"
    LOG = "log"
    SQRT = "sqrt"
    NEG = "neg"


class BinaryOp(StrEnum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"
    POW = "^"


@dataclass(frozen=True, slots=True)
class Const:
    value: float


@dataclass(frozen=True, slots=True)
class Var:
    """변수 ``u<index>`` (1부터 셈)."""
    index: int


@dataclass(frozen=True, slots=True)
class Unary:
    fn: UnaryFn
    arg: "ExprNode"


@dataclass(frozen=True, slots=True)
class Binary:
    op: BinaryOp
    left: "ExprNode"
    right: "ExprNode"


ExprNode = Const | Var | Unary | Binary

_FUNCTIONS: Final[frozenset[str]] = frozenset(f.value for f in UnaryFn if f is not UnaryFn.NEG)
_VARIABLE_RX: Final[re.Pattern[str]] = re.compile(r"u(\d+)")
_TOKEN_RX: Final[re.Pattern[str]] = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # "num" | "ident" | "op" | "end"
    text: str
    pos: int


class _ParseFailure(Exception):
    """파서 내부 제어 흐름. `parse()` 경계에서 `DomainError`로 번역됩니다."""

    def __init__(self, error: DomainError) -> None:
        super().__init__(error.message)
        self.error = error


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RX.match(text, pos)
        if m is None or m.lastgroup is None:
            raise _ParseFailure(expr_syntax_err(position=pos, detail=f"unexpected character {text[pos]!r}"))
        start = m.start(m.lastgroup)
        tokens.append(_Token(kind=m.lastgroup, text=m.group(m.lastgroup), pos=start))
        pos = m.end()
    tokens.append(_Token(kind="end", text="", pos=len(text)))
    return tokens


class _Parser:
    """재귀 하강 파서. 토큰 목록 위를 커서로 이동합니다."""

    def __init__(self, text: str, arity: int) -> None:
        self._tokens = _tokenize(text)
        self._i = 0
        self._arity = arity

    # ── 커서 ──────────────────────────────────────────────────
    def _peek(self) -> _Token:
        return self._tokens[self._i]

    def _next(self) -> _Token:
        tok = self._tokens[self._i]
        self._i += 1
        return tok

    def _expect(self, text: str) -> None:
        tok = self._next()
        if tok.text != text:
            found = repr(tok.text) if tok.kind != "end" else "end of input"
            raise _ParseFailure(expr_syntax_err(position=tok.pos, detail=f"expected {text!r}, found {found}"))

    # ── 문법 ──────────────────────────────────────────────────
    def parse(self) -> ExprNode:
        node = self._expr()
        tok = self._peek()
        if tok.kind != "end":
            raise _ParseFailure(expr_syntax_err(position=tok.pos, detail=f"unexpected {tok.text!r}"))
        return node

    def _expr(self) -> ExprNode:
        node = self._term()
        while self._peek().text in ("+", "-"):
            op = BinaryOp(self._next().text)
            node = Binary(op, node, self._term())
        return node

    def _term(self) -> ExprNode:
        node = self._unary()
        while self._peek().text in ("*", "/"):
            op = BinaryOp(self._next().text)
            node = Binary(op, node, self._unary())
        return node

    def _unary(self) -> ExprNode:
        if self._peek().text == "-":
            self._next()
            operand = self._unary()
            if isinstance(operand, Const):
                return Const(-operand.value)
            return Unary(UnaryFn.NEG, operand)
        return self._power()

    def _power(self) -> ExprNode:
        base = self._atom()
        if self._peek().text == "^":
            self._next()
            return Binary(BinaryOp.POW, base, self._unary())
        return base

    def _atom(self) -> ExprNode:
        tok = self._next()
        if tok.kind == "num":
            value = float(tok.text)
            if not math.isfinite(value):
                raise _ParseFailure(expr_syntax_err(position=tok.pos, detail=f"number {tok.text} overflows"))
            return Const(value)
        if tok.kind == "ident":
            return self._identifier(tok)
        if tok.text == "(":
            node = self._expr()
            self._expect(")")
            return node
        found = repr(tok.text) if tok.kind != "end" else "end of input"
        raise _ParseFailure(expr_syntax_err(position=tok.pos, detail=f"expected an operand, found {found}"))

    def _identifier(self, tok: _Token) -> ExprNode:
        name = tok.text
        if name == "pi":
            return Const(math.pi)
        if name in _FUNCTIONS:
            self._expect("(")
            arg = self._expr()
            self._expect(")")
            return Unary(UnaryFn(name), arg)
        m = _VARIABLE_RX.fullmatch(name)
        if m is not None:
            index = int(m.group(1))
            if not 1 <= index <= self._arity:
                raise _ParseFailure(expr_variable_range_err(index=index, arity=self._arity, position=tok.pos))
            return Var(index)
        raise _ParseFailure(expr_unknown_identifier_err(name=name, position=tok.pos))


def parse(text: str, m: int) -> Result[ExprNode, DomainError]:
    """수식 문자열을 AST로 파싱합니다.

    Args:
        text: ASCII 수식.
        m: 차트 차원. 변수 u1..um만 허용됩니다.

    Returns:
        Result[ExprNode, DomainError]: 성공 시 AST. 실패 코드는 ``expr_syntax``,
        ``expr_unknown_identifier``, ``expr_variable_range`` 중 하나이며 메시지에
        문자 위치가 들어갑니다.

    Examples:
        >>> parse("cos(u1)", 2)
        Ok(value=Unary(fn=<UnaryFn.COS: 'cos'>, arg=Var(index=1)))
        >>> parse("u3", 2).is_err()
        True
    """
    if m < 1:
        return Err(expr_syntax_err(position=0, detail=f"arity must be >= 1 (got={m})"))
    if not text.isascii():
        bad = next(i for i, ch in enumerate(text) if not ch.isascii())
        return Err(expr_syntax_err(position=bad, detail="only ASCII input is accepted"))
    return (
        IO.delay(lambda: _Parser(text, m).parse())
        .attempt(_ParseFailure)
        .run()
        .map_err(lambda failure: failure.error)
    )


def to_text(e: ExprNode) -> str:
    """정규 출력. 모든 연산을 괄호로 감싸서 다시 파싱하면 같은 트리가 나옵니다.

    Examples:
        >>> to_text(Binary(BinaryOp.POW, Var(1), Const(2.0)))
        '(u1 ^ 2.0)'
    """
    match e:
        case Const(value=v) if math.copysign(1.0, v) < 0:
            return f"(-{float(-v)!r})"
        case Const(value=v):
            return repr(float(v))
        case Var(index=i):
            return f"u{i}"
        case Unary(fn=UnaryFn.NEG, arg=arg):
            return f"(-{to_text(arg)})"
        case Unary(fn=fn, arg=arg):
            return f"{fn.value}({to_text(arg)})"
        case Binary(op=op, left=left, right=right):
            return f"({to_text(left)} {op.value} {to_text(right)})"
    raise TypeError(f"not an expression node: {e!r}")


def variables(e: ExprNode) -> frozenset[int]:
    """식에 등장하는 변수 첨자 집합."""
    match e:
        case Var(index=i):
            return frozenset({i})
        case Unary(arg=arg):
            return variables(arg)
        case Binary(left=left, right=right):
            return variables(left) | variables(right)
    return frozenset()
