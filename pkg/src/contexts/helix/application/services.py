"""유스케이스: analyze / search / trace / verify / list.

각 유스케이스는 리포트 문서와 종료 코드를 담은 `Outcome`을 돌려주고,
실패는 `DomainError`로 올립니다. 출력(파일/표준출력)은 호출자(CLI)의 몫입니다.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Final, Sequence

import numpy as np

from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import (
    DomainError,
    INPUT_ERROR_CODES,
    invalid_parameter_err,
)
from contexts.helix.adapters.report import (
    curve_csv,
    document,
    helix_verdict_payload,
    theorem_payload,
    weak_helix_payload,
)
from contexts.helix.domain.catalog import CatalogEntry, entries
from contexts.helix.domain.connection import NormalField, TangentField
from contexts.helix.domain.curves import (
    MIN_SAMPLES,
    collinearity_residual,
    frenet,
    geodesic_residual,
    helix_line,
    normal_curvature,
    straightness_residual,
)
from contexts.helix.domain.helix import check_helix, find_helix_directions, normalize_direction
from contexts.helix.domain.manifold import Immersion, sample_grid
from contexts.helix.domain.theorems import (
    TheoremInstance,
    Verdict,
    VerificationParams,
    contrapositive_reading,
    get_verifier,
)

__all__ = [
    "EXIT_OK",
    "EXIT_NEGATIVE",
    "EXIT_INPUT",
    "EXIT_NUMERIC",
    "EXIT_HYPOTHESIS",
    "EXIT_VIOLATED",
    "Outcome",
    "Subject",
    "exit_code_for",
    "analyze",
    "search",
    "trace",
    "verify",
    "list_catalog",
]

_log = logging.getLogger(__name__)

EXIT_OK: Final[int] = 0
EXIT_NEGATIVE: Final[int] = 1
EXIT_INPUT: Final[int] = 2
EXIT_NUMERIC: Final[int] = 3
EXIT_HYPOTHESIS: Final[int] = 4
EXIT_VIOLATED: Final[int] = 5

_VERDICT_EXIT: Final[dict[Verdict, int]] = {
    Verdict.CONFIRMED: EXIT_OK,
    Verdict.INCONCLUSIVE: EXIT_NEGATIVE,
    Verdict.HYPOTHESIS_NOT_MET: EXIT_HYPOTHESIS,
    Verdict.VIOLATED: EXIT_VIOLATED,
}

_UNIT_WARN: Final[float] = 1e-6


@dataclass(frozen=True, slots=True)
class Outcome:
    document: dict[str, Any]
    exit_code: int
    csv_text: str | None = None


@dataclass(frozen=True, slots=True)
class Subject:
    """해석 대상 몰입과 (카탈로그에서 왔다면) 그 항목."""

    immersion: Immersion
    entry: CatalogEntry | None = None


def exit_code_for(error: DomainError) -> int:
    return EXIT_INPUT if error.code in INPUT_ERROR_CODES else EXIT_NUMERIC


def _subject_info(s: Subject) -> dict[str, Any]:
    M = s.immersion
    return {
        "manifold": M.name,
        "source": "catalog" if s.entry is not None else "file",
        "m": M.m,
        "n": M.n,
        "components": list(M.component_texts()),
        "domain": [list(b) for b in M.domain],
    }


def _direction(s: Subject, raw: Sequence[float] | None) -> Result[np.ndarray, DomainError]:
    """방향을 정규화합니다. 주어지지 않으면 카탈로그의 첫 헬릭스 방향을 씁니다."""
    if raw is None:
        if s.entry is None or not s.entry.helix_directions:
            return Err(invalid_parameter_err(name="direction", detail="required for this manifold"))
        raw = s.entry.helix_directions[0].direction
    def _warn(pair: tuple[np.ndarray, float]) -> np.ndarray:
        unit, norm = pair
        if abs(norm - 1.0) > _UNIT_WARN:
            _log.warning("direction normalized (|d|=%.12g)", norm)
        return unit
    return normalize_direction(raw, s.immersion.n).map(_warn)


# ──────────────────────────────────────────────────────────────
# 유스케이스
# ──────────────────────────────────────────────────────────────
def analyze(s: Subject, direction: Sequence[float] | None, *, grid: int, tol: float) -> Result[Outcome, DomainError]:
    """헬릭스 판정. 헬릭스면 0, 아니면 1."""
    M = s.immersion

    def _run(d: np.ndarray) -> Result[Outcome, DomainError]:
        return check_helix(M, d, sample_grid(M, grid), tol).map(lambda v: Outcome(
            document=document(
                "analyze",
                instance={**_subject_info(s), "direction": d},
                parameters={"grid": grid, "tol": tol},
                result=helix_verdict_payload(v),
            ),
            exit_code=EXIT_OK if v.is_helix else EXIT_NEGATIVE,
        ))
    return _direction(s, direction).and_then(_run)


def search(s: Subject, *, grid: int, tol: float, starts: int, rng_seed: int) -> Result[Outcome, DomainError]:
    """약한 r-헬릭스 방향 탐색. r ≥ 1 이면 0, 아니면 1."""
    M = s.immersion
    return find_helix_directions(M, sample_grid(M, grid), tol, starts, rng_seed=rng_seed).map(lambda r: Outcome(
        document=document(
            "search",
            instance=_subject_info(s),
            parameters={"grid": grid, "tol": tol, "starts": starts, "rng_seed": rng_seed},
            result=weak_helix_payload(r),
        ),
        exit_code=EXIT_OK if r.independence_rank >= 1 else EXIT_NEGATIVE,
    ))


def trace(
    s: Subject,
    direction: Sequence[float] | None,
    seed: Sequence[float],
    *,
    s_max: float,
    step: float,
    k_floor: float,
) -> Result[Outcome, DomainError]:
    """헬릭스 선을 적분해 CSV와 요약(측지 잔차, 법곡률, 직선성)을 만듭니다."""
    M = s.immersion

    def _summarize(d: np.ndarray) -> Result[Outcome, DomainError]:
        curve = helix_line(M, d, seed, s_max, step)
        if isinstance(curve, Err):
            return Err(curve.error)
        c = curve.value
        summary: dict[str, Any] = {
            "samples": len(c),
            "length": float(c.s[-1]),
            "truncated": c.truncated,
            "stop_reason": c.stop_reason,
            "collinearity_residual": collinearity_residual(c),
        }
        k: np.ndarray | None = None
        if len(c) >= MIN_SAMPLES:
            fd, g, nc, st = frenet(c, k_floor=k_floor), geodesic_residual(c), normal_curvature(c), straightness_residual(c)
            for r in (fd, g, nc, st):
                if isinstance(r, Err):
                    return Err(r.error)
            k = fd.value.k
            summary |= {
                "geodesic_residual": g.value,
                "straightness_residual": st.value,
                "normal_curvature": {
                    "min": float(nc.value.min()),
                    "max": float(nc.value.max()),
                    "mean": float(nc.value.mean()),
                },
            }
        return Ok(Outcome(
            document=document(
                "trace",
                instance={**_subject_info(s), "direction": d, "seed": list(map(float, seed))},
                parameters={"s_max": s_max, "step": step, "k_floor": k_floor},
                result=summary,
            ),
            exit_code=EXIT_OK,
            csv_text=curve_csv(c, k),
        ))
    return _direction(s, direction).and_then(_summarize)


def _theorem_instance(
    s: Subject,
    theorem_id: str,
    directions: Sequence[Sequence[float]],
    seed: Sequence[float] | None,
    curve_field: Sequence[str] | None,
    normal: Sequence[str] | None,
) -> Result[TheoremInstance, DomainError]:
    M, entry = s.immersion, s.entry
    if directions:
        dirs_r = Result.collect(_direction(s, d) for d in directions)
    elif entry is not None and entry.helix_directions:
        known = entry.helix_directions if theorem_id == "3.6" else entry.helix_directions[:1]
        dirs_r = Result.collect(_direction(s, k.direction) for k in known)
    else:
        dirs_r = Ok([])
    if isinstance(dirs_r, Err):
        return Err(dirs_r.error)

    demo = entry.curve_demo if entry is not None else None
    seeds: tuple[np.ndarray, ...] = ()
    if seed is not None:
        seeds = (np.asarray(seed, dtype=float),)
    elif theorem_id == "3.6" and demo is not None:
        seeds = (np.asarray(demo.seed, dtype=float),)

    field_texts = curve_field if curve_field is not None else (demo.field if theorem_id == "3.6" and demo else None)
    field_r = TangentField.create(list(field_texts), M.m) if field_texts is not None else Ok(None)
    if isinstance(field_r, Err):
        return Err(field_r.error)

    normal_texts = normal
    if normal_texts is None and theorem_id == "3.6" and demo is not None and entry is not None:
        normal_texts = entry.normals[demo.normal]
    normal_r = NormalField.create(list(normal_texts), M.m) if normal_texts is not None else Ok(None)
    if isinstance(normal_r, Err):
        return Err(normal_r.error)

    return Ok(TheoremInstance(
        directions=tuple(dirs_r.value),
        seeds=seeds,
        curve_field=field_r.value,
        normal=normal_r.value,
    ))


def verify(
    s: Subject,
    theorem_id: str,
    params: VerificationParams,
    *,
    directions: Sequence[Sequence[float]] = (),
    seed: Sequence[float] | None = None,
    curve_field: Sequence[str] | None = None,
    normal: Sequence[str] | None = None,
) -> Result[Outcome, DomainError]:
    """정리 검증. 판정별 종료 코드: confirmed 0, inconclusive 1, hypothesis-not-met 4, violated 5."""
    def _run(verifier) -> Result[Outcome, DomainError]:
        inst = _theorem_instance(s, theorem_id, directions, seed, curve_field, normal)
        return inst.and_then(lambda i: verifier(s.immersion, i, params)).map(lambda report: Outcome(
            document=document(
                "verify",
                instance={**_subject_info(s), **report.instance},
                parameters=params.as_dict(),
                result={
                    **theorem_payload(report),
                    **({"contrapositive": contrapositive_reading(report)} if theorem_id == "3.6" else {}),
                },
            ),
            exit_code=_VERDICT_EXIT[report.verdict],
        ))
    return get_verifier(theorem_id).and_then(_run)


def list_catalog() -> Outcome:
    rows = [
        {
            "name": e.name,
            "m": e.immersion.m,
            "n": e.immersion.n,
            "helix_directions": [{"direction": list(k.direction), "theta": k.theta} for k in e.helix_directions],
            "second_normal_dim": e.second_normal_dim,
            "full": e.full,
            "normals": {k: list(v) for k, v in e.normals.items()},
            "notes": e.notes,
        }
        for e in entries()
    ]
    return Outcome(
        document=document("list", instance={}, parameters={}, result={"manifolds": rows}),
        exit_code=EXIT_OK,
    )
