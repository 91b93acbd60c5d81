"""방향 분해, 헬릭스 판정, 약한 r-헬릭스 방향 탐색, 헬릭스 연립식 잔차.

방향 d는 점마다 d = cosθ·T + sinθ·ξ 로 분해됩니다(T 접, ξ 법, 단위벡터).
각 θ가 격자 전체에서 일정하면 M은 d에 대한 헬릭스입니다.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Final, Sequence

import numpy as np

from shared.primitives.maybe import Maybe, Some
from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import (
    DomainError,
    all_singular_err,
    degenerate_angle_err,
    direction_dimension_err,
    non_unit_direction_err,
    too_few_samples_err,
    zero_direction_err,
)
from contexts.helix.domain.connection import AmbientField, HelixNormalField, HelixTangentField, derivative_along
from contexts.helix.domain.manifold import Frame, Immersion, frame_at

__all__ = [
    "UNIT_TOL",
    "PART_TOL",
    "MIN_VALID_POINTS",
    "HelixDecomposition",
    "HelixVerdict",
    "WeakHelixResult",
    "normalize_direction",
    "require_unit",
    "decompose_at",
    "decompose_direction",
    "check_helix",
    "find_helix_directions",
    "helix_system_residual",
    "helix_system_residual_at",
]

_log = logging.getLogger(__name__)

UNIT_TOL: Final[float] = 1e-10
PART_TOL: Final[float] = 1e-10
MIN_VALID_POINTS: Final[int] = 4
_RANK_RTOL: Final[float] = 1e-8
_MAX_ITER: Final[int] = 2000
_SNAP: Final[float] = 1e-6


# ──────────────────────────────────────────────────────────────
# 타입
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True, slots=True, eq=False)
class HelixDecomposition:
    """d = cosθ·T + sinθ·ξ.

    Attributes:
        theta: [0, π/2] 범위의 각.
        T: 단위 접성분. ‖Pd‖ < 1e-10 이면 없음.
        xi: 단위 법성분. ‖(I−P)d‖ < 1e-10 이면 없음.
        tangential_norm: ‖Pd‖ = cosθ.
    """

    theta: float
    T: Maybe[np.ndarray]
    xi: Maybe[np.ndarray]
    tangential_norm: float

    def reconstruct(self) -> np.ndarray:
        t = self.T.map_or(0.0, lambda v: math.cos(self.theta) * v)
        x = self.xi.map_or(0.0, lambda v: math.sin(self.theta) * v)
        return np.asarray(t + x, dtype=float)


@dataclass(frozen=True, slots=True)
class HelixVerdict:
    is_helix: bool
    theta_mean: float
    theta_spread: float
    theta_min: float
    theta_max: float
    grid_size: int
    skipped: int
    tolerance: float


@dataclass(frozen=True, slots=True, eq=False)
class WeakHelixResult:
    """서로 독립인 헬릭스 방향 목록. ``independence_rank == len(directions)``."""

    directions: tuple[np.ndarray, ...]
    thetas: tuple[float, ...]
    independence_rank: int

    @property
    def r(self) -> int:
        return self.independence_rank


# ──────────────────────────────────────────────────────────────
# 방향 검증
# ──────────────────────────────────────────────────────────────
def normalize_direction(d: Sequence[float], n: int) -> Result[tuple[np.ndarray, float], DomainError]:
    """방향을 단위벡터로 정규화합니다. 원래 노름을 함께 돌려줍니다."""
    v = np.asarray(d, dtype=float).reshape(-1)
    if v.size != n:
        return Err(direction_dimension_err(expected=n, got=v.size))
    norm = float(np.linalg.norm(v))
    if norm == 0.0 or not math.isfinite(norm):
        return Err(zero_direction_err())
    return Ok((v / norm, norm))


def require_unit(d: Sequence[float], n: int) -> Result[np.ndarray, DomainError]:
    v = np.asarray(d, dtype=float).reshape(-1)
    if v.size != n:
        return Err(direction_dimension_err(expected=n, got=v.size))
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > UNIT_TOL:
        return Err(non_unit_direction_err(norm=norm))
    return Ok(v)


# ──────────────────────────────────────────────────────────────
# 분해 / 판정
# ──────────────────────────────────────────────────────────────
def _angle(P: np.ndarray, d: np.ndarray) -> float:
    t = P @ d
    return math.atan2(float(np.linalg.norm(d - t)), float(np.linalg.norm(t)))


def _unit_part(v: np.ndarray, r: float) -> Maybe[np.ndarray]:
    return Some(_value=v).filter(lambda _: r >= PART_TOL).map(lambda w: w / r)


def decompose_at(F: Frame, d: np.ndarray) -> HelixDecomposition:
    t = F.projector @ d
    nu = d - t
    rt, rn = float(np.linalg.norm(t)), float(np.linalg.norm(nu))
    return HelixDecomposition(
        theta=math.atan2(rn, rt),
        T=_unit_part(t, rt),
        xi=_unit_part(nu, rn),
        tangential_norm=rt,
    )


def decompose_direction(M: Immersion, u: Sequence[float], d: Sequence[float]) -> Result[HelixDecomposition, DomainError]:
    """점 u에서 단위 방향 d를 접/법 성분으로 분해합니다.

    Examples:
        >>> from contexts.helix.domain.catalog import get
        >>> cone = get("cone").value.immersion
        >>> round(decompose_direction(cone, [0.0, 1.0], [0, 0, 1]).value.theta, 10)
        0.7853981634
    """
    return require_unit(d, M.n).and_then(
        lambda v: frame_at(M, u).map(lambda F: decompose_at(F, v))
    )


def _grid_projectors(M: Immersion, grid: np.ndarray) -> Result[tuple[np.ndarray, int], DomainError]:
    Ps: list[np.ndarray] = []
    skipped = 0
    for u in np.atleast_2d(grid):
        r = frame_at(M, u)
        if isinstance(r, Ok):
            Ps.append(r.value.projector)
        else:
            skipped += 1
            _log.debug("skipping grid point %s: %s", np.asarray(u).tolist(), r.error.message)
    if not Ps:
        return Err(all_singular_err())
    if len(Ps) < MIN_VALID_POINTS:
        return Err(too_few_samples_err(need=MIN_VALID_POINTS, got=len(Ps)))
    return Ok((np.stack(Ps), skipped))


def _verdict(Ps: np.ndarray, d: np.ndarray, tol: float, skipped: int) -> HelixVerdict:
    thetas = np.array([_angle(P, d) for P in Ps])
    spread = float(thetas.max() - thetas.min())
    return HelixVerdict(
        is_helix=spread <= tol,
        theta_mean=float(thetas.mean()),
        theta_spread=spread,
        theta_min=float(thetas.min()),
        theta_max=float(thetas.max()),
        grid_size=len(thetas),
        skipped=skipped,
        tolerance=tol,
    )


def check_helix(M: Immersion, d: Sequence[float], grid: np.ndarray, tol: float) -> Result[HelixVerdict, DomainError]:
    """격자 위에서 각 θ의 최대−최소 폭으로 헬릭스 여부를 판정합니다.

    특이점은 건너뛰고 ``skipped``에 셉니다. 유효 점이 하나도 없으면 ``all_singular``,
    4개 미만이면 ``too_few_samples``.
    """
    return require_unit(d, M.n).and_then(
        lambda v: _grid_projectors(M, grid).map(lambda ps: _verdict(ps[0], v, tol, ps[1]))
    )


# ──────────────────────────────────────────────────────────────
# 약한 r-헬릭스 탐색
# ──────────────────────────────────────────────────────────────
class _Variance:
    """F(d) = Var_q(dᵀP_q d) 와 그 기울기."""

    def __init__(self, Ps: np.ndarray) -> None:
        self._Ps = Ps

    def __call__(self, d: np.ndarray) -> tuple[float, np.ndarray]:
        Pd = self._Ps @ d
        f = Pd @ d
        dev = f - f.mean()
        return float(np.mean(dev * dev)), (4.0 / f.size) * (dev @ Pd)


def _descend(objective: _Variance, d0: np.ndarray, C: np.ndarray) -> tuple[np.ndarray, float]:
    """여공간 C 안의 단위구면 위 사영 경사하강. 성공 시 보폭 2배, 실패 시 절반."""
    d = d0
    val, g = objective(d)
    step = 1.0
    for _ in range(_MAX_ITER):
        if val < 1e-30 or step < 1e-12:
            break
        g = C @ g
        g -= (g @ d) * d
        if not np.any(g):
            break
        trial = C @ (d - step * g)
        norm = float(np.linalg.norm(trial))
        if norm == 0.0:
            step *= 0.5
            continue
        trial /= norm
        tv, tg = objective(trial)
        if tv < val:
            d, val, g = trial, tv, tg
            step *= 2.0
        else:
            step *= 0.5
    return d, val


def _canonical(d: np.ndarray, C: np.ndarray) -> np.ndarray:
    """하강 잡음 수준(_SNAP) 아래 성분을 0 으로 두고 여공간 C 로 되돌린 뒤, 첫 비영 성분이 양수가 되게 합니다."""
    snapped = C @ np.where(np.abs(d) < _SNAP, 0.0, d)
    snapped /= np.linalg.norm(snapped)
    if snapped[np.flatnonzero(np.abs(snapped) >= _SNAP)[0]] < 0:
        snapped = -snapped
    return snapped + 0.0


def find_helix_directions(
    M: Immersion,
    grid: np.ndarray,
    tol: float,
    max_starts: int,
    *,
    rng_seed: int = 42,
) -> Result[WeakHelixResult, DomainError]:
    """다중 시작 국소 하강과 수축(deflation)으로 독립 헬릭스 방향을 찾습니다.

    라운드마다 여공간에 사영한 시작점(표준기저 + ``max_starts``개 난수)에서 분산을
    최소화하고, 수렴 후보를 부호 정규화·8자리 반올림해 사전식 내림차순으로 정렬한 뒤
    첫 후보를 받아들입니다. 받아들인 방향의 직교여공간으로 다음 라운드를 제한하므로
    결과는 서로 직교합니다. 비어 있는 결과도 정상입니다.
    """
    grid_r = _grid_projectors(M, grid)
    if isinstance(grid_r, Err):
        return Err(grid_r.error)
    Ps, skipped = grid_r.value
    objective = _Variance(Ps)
    rng = np.random.default_rng(rng_seed)
    accepted: list[np.ndarray] = []
    thetas: list[float] = []

    for round_no in range(M.n):
        D = np.column_stack(accepted) if accepted else np.zeros((M.n, 0))
        C = np.eye(M.n) - D @ D.T
        starts = [C[:, i] for i in range(M.n)]
        starts += [C @ v for v in rng.standard_normal((max_starts, M.n))]
        candidates: list[tuple[tuple[float, ...], np.ndarray]] = []
        for s in starts:
            norm = float(np.linalg.norm(s))
            if norm < 1e-8:
                continue
            d, val = _descend(objective, s / norm, C)
            if val < tol * tol:
                d = _canonical(d, C)
                candidates.append((tuple((np.round(d, 8) + 0.0).tolist()), d))
        candidates.sort(key=lambda kc: kc[0], reverse=True)
        found = False
        for _, d in candidates:
            verdict = _verdict(Ps, d, tol, skipped)
            if verdict.is_helix:
                accepted.append(d)
                thetas.append(verdict.theta_mean)
                found = True
                _log.info("round %d: helix direction %s (theta=%.10f)", round_no + 1, np.round(d, 10).tolist(), verdict.theta_mean)
                break
        if not found:
            break

    rank = 0
    if accepted:
        sigma = np.linalg.svd(np.column_stack(accepted), compute_uv=False)
        rank = int(np.sum(sigma > _RANK_RTOL * sigma[0]))
    return Ok(WeakHelixResult(directions=tuple(accepted), thetas=tuple(thetas), independence_rank=rank))


# ──────────────────────────────────────────────────────────────
# 헬릭스 연립식 잔차
# ──────────────────────────────────────────────────────────────
def helix_system_residual_at(F: Frame, d: np.ndarray, X: AmbientField) -> Result[tuple[float, float], DomainError]:
    """r1 = ‖cosθ·∇_X T − sinθ·A^ξ(X)‖, r2 = ‖cosθ·V(X,T) + sinθ·∇⊥_X ξ‖."""
    dec = decompose_at(F, d)
    if dec.T.is_nothing() or dec.xi.is_nothing():
        return Err(degenerate_angle_err(theta=dec.theta))
    c, s = math.cos(dec.theta), math.sin(dec.theta)

    def _residuals(x: np.ndarray) -> Result[tuple[float, float], DomainError]:
        dT = derivative_along(F, HelixTangentField(d), x)
        dxi = derivative_along(F, HelixNormalField(d), x)
        if isinstance(dT, Err):
            return Err(dT.error)
        if isinstance(dxi, Err):
            return Err(dxi.error)
        DT, Dxi = dT.value.derivative, dxi.value.derivative
        r1 = c * F.tangential(DT) - s * F.tangential(-Dxi)
        r2 = c * F.normal(DT) + s * F.normal(Dxi)
        return Ok((float(np.linalg.norm(r1)), float(np.linalg.norm(r2))))

    return X.value(F).and_then(_residuals)


def helix_system_residual(
    M: Immersion,
    u: Sequence[float],
    d: Sequence[float],
    X: AmbientField,
) -> Result[tuple[float, float], DomainError]:
    """점 u에서 헬릭스 연립식의 잔차 (r1, r2). θ가 0 또는 π/2면 ``degenerate_angle``."""
    return require_unit(d, M.n).and_then(
        lambda v: frame_at(M, u).and_then(lambda F: helix_system_residual_at(F, v, X))
    )
