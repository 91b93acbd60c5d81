"""CLI와 유스케이스 사이의 조립 코드.

매니폴드 참조 해석(카탈로그 이름 → 파일 경로), 쉼표로 구분된 벡터 인자 파싱,
기본 설정값을 여기에 모읍니다.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Final

from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import DomainError, invalid_parameter_err, unknown_manifold_err
from contexts.helix.adapters.manifold_file import load_manifold
from contexts.helix.application.services import Subject
from contexts.helix.domain import catalog

__all__ = ["ENV_PREFIX", "Settings", "DEFAULTS", "resolve_manifold", "parse_vector", "parse_texts"]

ENV_PREFIX: Final[str] = "HELIXLAB"


@dataclass(frozen=True, slots=True)
class Settings:
    """명령행 옵션의 기본값. 환경변수 ``HELIXLAB_<COMMAND>_<OPTION>``으로 덮어쓸 수 있습니다."""

    grid: int = 20
    step: float = 1e-2
    s_max: float = 1.0
    tol: float = 1e-6
    nonzero_floor: float = 1e-3
    rng_seed: int = 42
    starts: int = 8
    n_seeds: int = 5
    n_random_probes: int = 3
    k_floor: float = 1e-6


DEFAULTS: Final[Settings] = Settings()


def resolve_manifold(ref: str) -> Result[Subject, DomainError]:
    """카탈로그 이름을 먼저 찾고, 없으면 정의 파일 경로로 읽습니다.

    Examples:
        >>> resolve_manifold("cone").value.entry.name
        'cone'
        >>> resolve_manifold("no-such-thing").error.code
        'unknown_manifold'
    """
    match catalog.get(ref):
        case Ok(value=entry):
            return Ok(Subject(immersion=entry.immersion, entry=entry))
    path = Path(ref)
    if not path.is_file():
        return Err(unknown_manifold_err(ref))
    return load_manifold(path).map(lambda M: Subject(immersion=M))


def parse_vector(name: str, text: str) -> Result[tuple[float, ...], DomainError]:
    """``"0,0,1"`` 같은 쉼표 구분 실수 목록.

    Examples:
        >>> parse_vector("direction", "0, 0.5,1").value
        (0.0, 0.5, 1.0)
        >>> parse_vector("seed", "1,x").error.code
        'invalid_parameter'
    """
    parts = [p.strip() for p in text.split(",")]
    try:
        values = tuple(float(p) for p in parts)
    except ValueError:
        return Err(invalid_parameter_err(name=name, detail=f"expected comma-separated numbers (got '{text}')"))
    if not all(math.isfinite(v) for v in values):
        return Err(invalid_parameter_err(name=name, detail=f"components must be finite (got '{text}')"))
    return Ok(values)


def parse_texts(text: str) -> tuple[str, ...]:
    """식 목록. 식 안에 쉼표가 없으므로 ``;``와 ``,`` 모두 구분자로 받습니다."""
    sep = ";" if ";" in text else ","
    return tuple(p.strip() for p in text.split(sep))
