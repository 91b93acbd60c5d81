"""2차 제트(절단 테일러 전개) 산술과 수식 평가.

`Jet2`는 한 점에서 스칼라 함수의 값, 기울기, 헤시안을 함께 들고 다닙니다.
연쇄법칙을 2차까지 닫힌 형태로 적용하므로 헤시안은 구성상 정확히 대칭이며,
2차 이하 다항식에서는 반올림 외의 오차가 없습니다.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Final, Sequence

import numpy as np

from shared.primitives.io import IO
from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import DomainError, expr_domain_err, expr_variable_range_err
from contexts.helix.domain.expr import (
    Binary,
    BinaryOp,
    Const,
    ExprNode,
    Unary,
    UnaryFn,
    Var,
    to_text,
)

__all__ = ["Jet2", "eval_jet2", "eval_jets"]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, slots=True, eq=False)
class Jet2:
    """값 + 기울기(m) + 대칭 헤시안(m×m)."""

    value: float
    gradient: np.ndarray
    hessian: np.ndarray

    # ── 생성자 ────────────────────────────────────────────────
    @staticmethod
    def constant(c: float, m: int) -> Jet2:
        return Jet2(float(c), _frozen(np.zeros(m)), _frozen(np.zeros((m, m))))

    @staticmethod
    def variable(u: np.ndarray, i: int) -> Jet2:
        """좌표 함수 ``u_{i+1}`` 의 제트. ``i``는 0부터 셉니다."""
        g = np.zeros(u.size)
        g[i] = 1.0
        return Jet2(float(u[i]), _frozen(g), _frozen(np.zeros((u.size, u.size))))

    # ── 산술 ──────────────────────────────────────────────────
    def __add__(self, other: Jet2) -> Jet2:
        return Jet2(
            self.value + other.value,
            _frozen(self.gradient + other.gradient),
            _frozen(self.hessian + other.hessian),
        )

    def __sub__(self, other: Jet2) -> Jet2:
        return Jet2(
            self.value - other.value,
            _frozen(self.gradient - other.gradient),
            _frozen(self.hessian - other.hessian),
        )

    def __neg__(self) -> Jet2:
        return Jet2(-self.value, _frozen(-self.gradient), _frozen(-self.hessian))

    def __mul__(self, other: Jet2) -> Jet2:
        a, b = self, other
        cross = np.outer(a.gradient, b.gradient)
        return Jet2(
            a.value * b.value,
            _frozen(a.value * b.gradient + b.value * a.gradient),
            _frozen(a.value * b.hessian + b.value * a.hessian + cross + cross.T),
        )

    def chain(self, f0: float, f1: float, f2: float) -> Jet2:
        """스칼라 함수 f를 합성합니다. f0, f1, f2는 ``self.value``에서의 f, f', f''."""
        g = self.gradient
        return Jet2(
            float(f0),
            _frozen(f1 * g),
            _frozen(f1 * self.hessian + f2 * np.outer(g, g)),
        )

    @property
    def is_constant(self) -> bool:
        return not (self.gradient.any() or self.hessian.any())


# ──────────────────────────────────────────────────────────────
# 평가
# ──────────────────────────────────────────────────────────────
def eval_jet2(e: ExprNode, u: Sequence[float] | np.ndarray) -> Result[Jet2, DomainError]:
    """식 ``e``를 점 ``u``에서 2차 제트로 평가합니다.

    Args:
        e: 차수 m(= ``len(u)``)에 맞는 AST.
        u: 차트 점.

    Returns:
        Result[Jet2, DomainError]: 값, 기울기, 헤시안. 정의역 위반(0 이하의 log,
        0으로 나누기, 음수의 sqrt 등)은 ``expr_domain`` 오류로, 문제가 된 부분식을
        메시지에 담아 돌려줍니다.

    Examples:
        >>> from contexts.helix.domain.expr import parse
        >>> j = eval_jet2(parse("u1^2", 1).value, [3.0]).value
        >>> (j.value, j.gradient.tolist(), j.hessian.tolist())
        (9.0, [6.0], [[2.0]])
    """
    point = np.asarray(u, dtype=float).reshape(-1)
    return (
        IO.delay(lambda: _eval(e, point))
        .attempt(OverflowError, ZeroDivisionError, ValueError)
        .run()
        .map_err(lambda exc: expr_domain_err(subexpression=to_text(e), detail=_arith_detail(exc)))
        .and_then(lambda r: r)
        .and_then(lambda j: _finite(j, e))
    )


_ARITH_DETAIL: Final[dict[type[Exception], str]] = {
    OverflowError: "numeric overflow",
    ZeroDivisionError: "denominator underflow",
    ValueError: "non-finite argument",
}


def _arith_detail(exc: Exception) -> str:
    return next(d for t, d in _ARITH_DETAIL.items() if isinstance(exc, t))


def _finite(j: Jet2, e: ExprNode) -> Result[Jet2, DomainError]:
    if math.isfinite(j.value) and np.isfinite(j.gradient).all() and np.isfinite(j.hessian).all():
        return Ok(j)
    return _domain(e, "non-finite result")


def eval_jets(components: Sequence[ExprNode], u: Sequence[float] | np.ndarray) -> Result[list[Jet2], DomainError]:
    """여러 성분을 같은 점에서 평가합니다. 첫 실패에서 멈춥니다."""
    return Result.collect(eval_jet2(c, u) for c in components)


def _eval(node: ExprNode, u: np.ndarray) -> Result[Jet2, DomainError]:
    match node:
        case Const(value=v):
            return Ok(Jet2.constant(v, u.size))
        case Var(index=i):
            if not 1 <= i <= u.size:
                return Err(expr_variable_range_err(index=i, arity=u.size, position=0))
            return Ok(Jet2.variable(u, i - 1))
        case Unary(fn=fn, arg=arg):
            inner = _eval(arg, u)
            if isinstance(inner, Err):
                return inner
            return _unary(fn, inner.value, node)
        case Binary(op=op, left=left, right=right):
            a = _eval(left, u)
            if isinstance(a, Err):
                return a
            b = _eval(right, u)
            if isinstance(b, Err):
                return b
            return _binary(op, a.value, b.value, node)
    return Err(expr_domain_err(subexpression=repr(node), detail="unknown node"))


def _domain(node: ExprNode, detail: str) -> Result[Jet2, DomainError]:
    return Err(expr_domain_err(subexpression=to_text(node), detail=detail))


def _unary(fn: UnaryFn, x: Jet2, node: ExprNode) -> Result[Jet2, DomainError]:
    v = x.value
    match fn:
        case UnaryFn.NEG:
            return Ok(-x)
        case UnaryFn.SIN:
            s, c = math.sin(v), math.cos(v)
            return Ok(x.chain(s, c, -s))
        case UnaryFn.COS:
            s, c = math.sin(v), math.cos(v)
            return Ok(x.chain(c, -s, -c))
        case UnaryFn.TAN:
            if abs(math.cos(v)) < 1e-12:
                return _domain(node, "tan at a pole")
            t = math.tan(v)
            sec2 = 1.0 + t * t
            return Ok(x.chain(t, sec2, 2.0 * t * sec2))
        case UnaryFn.ATAN:
            q = 1.0 + v * v
            return Ok(x.chain(math.atan(v), 1.0 / q, -2.0 * v / (q * q)))
        case UnaryFn.EXP:
            ev = math.exp(v)
            return Ok(x.chain(ev, ev, ev))
        case UnaryFn.LOG:
            if v <= 0.0:
                return _domain(node, f"log of non-positive value {v:.6g}")
            return Ok(x.chain(math.log(v), 1.0 / v, -1.0 / (v * v)))
        case UnaryFn.SQRT:
            if v < 0.0:
                return _domain(node, f"sqrt of negative value {v:.6g}")
            if v == 0.0:
                return _domain(node, "sqrt is not differentiable at 0")
            r = math.sqrt(v)
            return Ok(x.chain(r, 0.5 / r, -0.25 / (r * v)))
    return _domain(node, f"unsupported function {fn}")


def _binary(op: BinaryOp, a: Jet2, b: Jet2, node: ExprNode) -> Result[Jet2, DomainError]:
    match op:
        case BinaryOp.ADD:
            return Ok(a + b)
        case BinaryOp.SUB:
            return Ok(a - b)
        case BinaryOp.MUL:
            return Ok(a * b)
        case BinaryOp.DIV:
            w = b.value
            if w == 0.0:
                return _domain(node, "division by zero")
            return Ok(a * b.chain(1.0 / w, -1.0 / (w * w), 2.0 / (w * w * w)))
        case BinaryOp.POW:
            if b.is_constant:
                return _power(a, b.value, node)
            if a.value <= 0.0:
                return _domain(node, f"variable exponent of non-positive base {a.value:.6g}")
            log_a = a.chain(math.log(a.value), 1.0 / a.value, -1.0 / (a.value * a.value))
            z = b * log_a
            ez = math.exp(z.value)
            return Ok(z.chain(ez, ez, ez))
    return _domain(node, f"unsupported operator {op}")


def _power(a: Jet2, c: float, node: ExprNode) -> Result[Jet2, DomainError]:
    x = a.value
    if float(c).is_integer():
        n = int(c)
        if n == 0:
            return Ok(Jet2.constant(1.0, a.gradient.size))
        if n < 0 and x == 0.0:
            return _domain(node, "division by zero")
        f1 = n * x ** (n - 1)
        f2 = n * (n - 1) * x ** (n - 2) if n != 1 else 0.0
        return Ok(a.chain(x ** n, f1, f2))
    if x < 0.0:
        return _domain(node, f"fractional power of negative value {x:.6g}")
    if x == 0.0:
        if c < 2.0:
            return _domain(node, "fractional power is not twice differentiable at 0")
        return Ok(a.chain(0.0, 0.0, 0.0))
    return Ok(a.chain(x ** c, c * x ** (c - 1.0), c * (c - 1.0) * x ** (c - 2.0)))
