"""기하 계산 코어를 위한 값 기반 도메인 오류.

개요:
    코어는 예외를 던지지 않고 실패를 `DomainError` **값**으로 돌려줍니다.
    `Result[T, DomainError]`와 결합해 합성을 유지하고, 어댑터 계층(파일, CLI)은
    외부 예외를 `DomainError`로 번역해서 올립니다. CLI는 ``code``만 보고
    종료 코드를 고릅니다.

네이밍:
    * 오류 코드는 **snake_case**. 예: ``"singular_frame"``, ``"expr_syntax"``.
    * 입력값에 의존하지 않는 오류는 모듈 싱글턴으로 재사용합니다.

예시:
    >>> err = not_normal_err(tangential=0.3)
    >>> err.code
    'not_normal'
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Final, Sequence

__all__ = [
    "DomainError",
    "INPUT_ERROR_CODES",
    "NUMERIC_ERROR_CODES",
    # 식(expression)
    "expr_syntax_err",
    "expr_unknown_identifier_err",
    "expr_variable_range_err",
    "expr_domain_err",
    # 매니폴드/프레임
    "immersion_invalid_err",
    "out_of_domain_err",
    "singular_frame_err",
    "not_normal_err",
    "too_few_samples_err",
    "all_singular_err",
    # 방향/헬릭스/곡선
    "non_unit_direction_err",
    "direction_dimension_err",
    "zero_direction_err",
    "degenerate_angle_err",
    "vanishing_field_err",
    # 카탈로그/어댑터
    "unknown_manifold_err",
    "unknown_theorem_err",
    "manifold_file_err",
    "io_failure_err",
    "invalid_parameter_err",
]


# ──────────────────────────────────────────────────────────────
# 기본 타입
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True, slots=True)
class DomainError:
    """도메인 오류를 표현하는 불변 값 객체.

    Attributes:
        code: 오류 코드(snake_case). 예: ``"singular_frame"``.
        message: 사용자/로그 출력용 메시지.
    """

    code: str
    message: str


# CLI 종료 코드 분류: 입력 오류(2) / 수치 실패(3)
INPUT_ERROR_CODES: Final[frozenset[str]] = frozenset({
    "expr_syntax",
    "expr_unknown_identifier",
    "expr_variable_range",
    "immersion_invalid",
    "direction_dimension",
    "zero_direction",
    "unknown_manifold",
    "unknown_theorem",
    "manifold_file",
    "io_failure",
    "invalid_parameter",
})
NUMERIC_ERROR_CODES: Final[frozenset[str]] = frozenset({
    "expr_domain",
    "out_of_domain",
    "singular_frame",
    "all_singular",
    "vanishing_field",
    "not_normal",
    "degenerate_angle",
    "too_few_samples",
    "non_unit_direction",
})


# ──────────────────────────────────────────────────────────────
# 식(expression) 계열
# ──────────────────────────────────────────────────────────────
def expr_syntax_err(*, position: int, detail: str) -> DomainError:
    """구문 오류. ``position``은 0부터 세는 문자 위치입니다.

    Examples:
        >>> expr_syntax_err(position=3, detail="expected ')'").message
        "syntax error at position 3: expected ')'"
    """
    return DomainError("expr_syntax", f"syntax error at position {position}: {detail}")


def expr_unknown_identifier_err(*, name: str, position: int) -> DomainError:
    """알 수 없는 식별자(함수/변수)."""
    return DomainError("expr_unknown_identifier", f"unknown identifier '{name}' at position {position}")


def expr_variable_range_err(*, index: int, arity: int, position: int) -> DomainError:
    """변수 첨자가 선언된 차원 m을 넘음.

    Examples:
        >>> expr_variable_range_err(index=3, arity=2, position=0).message
        'variable index out of range: u3 (m=2) at position 0'
    """
    return DomainError(
        "expr_variable_range",
        f"variable index out of range: u{index} (m={arity}) at position {position}",
    )


def expr_domain_err(*, subexpression: str, detail: str) -> DomainError:
    """평가 중 정의역 위반(log ≤ 0, 0으로 나누기, 음수의 sqrt 등)."""
    return DomainError("expr_domain", f"{detail} in '{subexpression}'")


# ──────────────────────────────────────────────────────────────
# 매니폴드/프레임 계열
# ──────────────────────────────────────────────────────────────
_ALL_SINGULAR = DomainError("all_singular", "every sample point is singular or outside the chart")


def immersion_invalid_err(detail: str) -> DomainError:
    """몰입(immersion) 정의 자체가 잘못됨(차원, 정의역 경계 등)."""
    return DomainError("immersion_invalid", detail)


def out_of_domain_err(u: Sequence[float]) -> DomainError:
    """차트 점이 직사각형 정의역 밖에 있음."""
    coords = ", ".join(f"{x:.6g}" for x in u)
    return DomainError("out_of_domain", f"chart point ({coords}) is outside the domain")


def singular_frame_err(*, u: Sequence[float], ratio: float) -> DomainError:
    """야코비안 계수 결손(최소/최대 특이값 비가 임계값 미만)."""
    coords = ", ".join(f"{x:.6g}" for x in u)
    return DomainError(
        "singular_frame",
        f"rank-deficient Jacobian at ({coords}): sigma_min/sigma_max={ratio:.3e}",
    )


def not_normal_err(*, tangential: float) -> DomainError:
    """법벡터(장)로 주어진 값이 접성분을 가짐."""
    return DomainError("not_normal", f"vector is not normal: tangential part has norm {tangential:.3e}")


def too_few_samples_err(*, need: int, got: int) -> DomainError:
    """표본 수 부족."""
    return DomainError("too_few_samples", f"need at least {need} samples (got={got})")


def all_singular_err() -> DomainError:
    """격자 전체가 특이점(싱글턴)."""
    return _ALL_SINGULAR


# ──────────────────────────────────────────────────────────────
# 방향/헬릭스/곡선 계열
# ──────────────────────────────────────────────────────────────
_ZERO_DIRECTION = DomainError("zero_direction", "direction vector must be non-zero")
_VANISHING = DomainError("vanishing_field", "tangent field vanishes along the trajectory")


def non_unit_direction_err(*, norm: float) -> DomainError:
    """방향 벡터가 단위벡터가 아님."""
    return DomainError("non_unit_direction", f"direction must be unit (|d|={norm:.12g})")


def direction_dimension_err(*, expected: int, got: int) -> DomainError:
    """방향 벡터의 성분 수가 주변 공간 차원과 다름."""
    return DomainError("direction_dimension", f"direction needs {expected} components (got={got})")


def zero_direction_err() -> DomainError:
    """영벡터 방향(싱글턴)."""
    return _ZERO_DIRECTION


def degenerate_angle_err(*, theta: float) -> DomainError:
    """헬릭스 각이 0 또는 π/2에 붙어 T 또는 ξ가 정의되지 않음."""
    return DomainError("degenerate_angle", f"helix angle {theta:.12g} is degenerate (needs 0 < theta < pi/2)")


def vanishing_field_err() -> DomainError:
    """접벡터장이 0이 됨(싱글턴)."""
    return _VANISHING


# ──────────────────────────────────────────────────────────────
# 카탈로그/어댑터 계열
# ──────────────────────────────────────────────────────────────
def unknown_manifold_err(name: str) -> DomainError:
    """카탈로그에 없고 파일로도 찾을 수 없는 매니폴드 참조."""
    return DomainError("unknown_manifold", f"unknown manifold '{name}'")


def unknown_theorem_err(theorem_id: str) -> DomainError:
    """등록되지 않은 정리 식별자."""
    return DomainError("unknown_theorem", f"unknown theorem id '{theorem_id}'")


def manifold_file_err(*, line: int, detail: str) -> DomainError:
    """매니폴드 정의 파일의 줄 단위 진단.

    Examples:
        >>> manifold_file_err(line=4, detail="unknown key 'colour'").message
        "line 4: unknown key 'colour'"
    """
    return DomainError("manifold_file", f"line {line}: {detail}")


def io_failure_err(detail: str) -> DomainError:
    """파일 시스템 등 외부 입출력 실패."""
    return DomainError("io_failure", detail)


def invalid_parameter_err(*, name: str, detail: str) -> DomainError:
    """수치 파라미터(격자, 보폭, 허용오차 등) 검증 실패."""
    return DomainError("invalid_parameter", f"{name}: {detail}")
