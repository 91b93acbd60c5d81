"""수치 파라미터 검증 유틸.

개요:
    - 예외를 던지지 않고 실패를 `Result[T, DomainError]`로 표현하는 검증기를
      제공합니다.
    - 격자 밀도, RK4 보폭, 허용오차, 방향 벡터처럼 CLI/설정에서 들어오는 수치는
      모두 여기의 검증기를 거쳐 코어로 들어갑니다.
    - 검증기는 `Callable[[T], Result[T, DomainError]]` 시그니처를 따르며
      `all_of(v1, v2, ...)`로 직선(early-return) 합성합니다.

예시:
    >>> step_ok = all_of(ensure_finite("step"), ensure_range("step", min_=1e-6, max_=1.0))
    >>> step_ok(0.01).is_ok()
    True
    >>> step_ok(float("nan")).is_err()
    True
"""

from __future__ import annotations

import math
from numbers import Real
from typing import Callable, TypeVar

from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import DomainError, invalid_parameter_err

__all__ = [
    "Validator",
    "all_of",
    "ensure_finite",
    "ensure_range",
    "ensure_integer",
]

T = TypeVar("T")

# ──────────────────────────────────────────────────────────────
# 검증 유틸(총함수)
# ──────────────────────────────────────────────────────────────
Validator = Callable[[T], Result[T, DomainError]]
"""검증기 타입 별칭: ``Callable[[T], Result[T, DomainError]]``."""


def all_of(*validators: Validator[T]) -> Validator[T]:
    """여러 검증기를 순차 적용하는 합성 검증기. 첫 실패에서 즉시 반환합니다.

    Examples:
        >>> v = all_of(ensure_finite("tol"), ensure_range("tol", min_=0.0))
        >>> v(1e-6).is_ok()
        True
        >>> v(-1.0).is_err()
        True
    """
    def _run(value: T) -> Result[T, DomainError]:
        for v in validators:
            r = v(value)
            if r.is_err():
                return r
        return Ok(value=value)
    return _run


def ensure_finite(name: str) -> Validator[Real]:
    """유한한 실수(NaN/inf 아님)인지 검사하는 검증기를 만듭니다."""
    def _f(x: Real) -> Result[Real, DomainError]:
        if not math.isfinite(float(x)):
            return Err(error=invalid_parameter_err(name=name, detail=f"must be finite (got={x})"))
        return Ok(value=x)
    return _f


def ensure_range(
    name: str,
    *,
    min_: Real | None = None,
    max_: Real | None = None,
    exclusive_min: bool = False,
) -> Validator[Real]:
    """연속값의 범위를 검사하는 검증기를 만듭니다.

    `min_`/`max_`가 `None`이면 해당 경계는 적용하지 않습니다. 보폭·허용오차처럼
    0이 허용되지 않는 값은 ``exclusive_min=True``로 씁니다.

    Args:
        name: 오류 메시지에 쓸 파라미터 이름(예: ``"step"``).
        min_: 하한.
        max_: 상한(포함).
        exclusive_min: 하한을 열린 경계로 볼지 여부.

    Examples:
        >>> v = ensure_range("step", min_=0.0, exclusive_min=True)
        >>> v(0.01).is_ok()
        True
        >>> v(0.0).is_err()
        True
    """
    def _f(x: Real) -> Result[Real, DomainError]:
        below = min_ is not None and (x <= min_ if exclusive_min else x < min_)
        above = max_ is not None and x > max_
        if below or above:
            lo = "(" if exclusive_min else "["
            return Err(error=invalid_parameter_err(
                name=name,
                detail=f"must lie in {lo}{min_}, {max_}] (got={x})",
            ))
        return Ok(value=x)
    return _f


def ensure_integer(name: str, *, min_: int) -> Validator[int]:
    """``min_`` 이상의 정수인지 검사합니다. (격자 밀도, 시작점 수 등)"""
    def _f(x: int) -> Result[int, DomainError]:
        if isinstance(x, bool) or not isinstance(x, int):
            return Err(error=invalid_parameter_err(name=name, detail=f"must be an integer (got={x!r})"))
        if x < min_:
            return Err(error=invalid_parameter_err(name=name, detail=f"must be >= {min_} (got={x})"))
        return Ok(value=x)
    return _f
