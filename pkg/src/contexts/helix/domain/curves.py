"""매니폴드 위 곡선: 적분, 프레네 데이터, 측지/법곡률/점근/곡률선 잔차.

곡선은 단위 접벡터장의 적분곡선이며 차트 좌표에서 고정 보폭 RK4로 적분합니다.
매개변수는 호의 길이 s입니다. 도함수 dT/ds는 표본 위 중심 차분(내부 4차, 양 끝
2차)으로 구하고, 잔차의 최댓값은 내부 표본(인덱스 2..N−3)에서만 잽니다.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Final, Sequence

import numpy as np

from shared.primitives.maybe import Maybe, Some, Nothing
from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import DomainError, too_few_samples_err, vanishing_field_err
from contexts.helix.domain.connection import (
    VANISHING_TOL,
    AmbientField,
    HelixTangentField,
    second_fundamental_tensor,
    weingarten_along,
)
from contexts.helix.domain.manifold import Frame, Immersion, frame_at

__all__ = [
    "K_FLOOR",
    "MIN_SAMPLES",
    "CurveOnManifold",
    "FrenetData",
    "integral_curve",
    "helix_line",
    "frames_along",
    "interior",
    "frenet",
    "geodesic_residual",
    "normal_curvature",
    "normal_connection_norms",
    "asymptotic_residual",
    "line_of_curvature_residual",
    "straightness_residual",
    "collinearity_residual",
    "acceleration_split",
]

_log = logging.getLogger(__name__)

K_FLOOR: Final[float] = 1e-6
MIN_SAMPLES: Final[int] = 5


# ──────────────────────────────────────────────────────────────
# 타입
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True, slots=True, kw_only=True, eq=False)
class CurveOnManifold:
    """호의 길이로 매개된 곡선의 표본.

    Attributes:
        s: 호의 길이 (N,).
        u: 차트 점 (N×m).
        p: 주변 점 (N×n).
        T: 단위 접벡터 (N×n).
        step: 적분 보폭.
        immersion: 곡선이 놓인 몰입.
        truncated: 목표 길이에 닿기 전에 멈췄는지.
        stop_reason: 멈춘 이유(오류 코드). 끝까지 갔으면 ``None``.
    """

    s: np.ndarray
    u: np.ndarray
    p: np.ndarray
    T: np.ndarray
    step: float
    immersion: Immersion
    truncated: bool = False
    stop_reason: str | None = None

    def __len__(self) -> int:
        return int(self.s.size)


@dataclass(frozen=True, slots=True, eq=False)
class FrenetData:
    """표본별 dT/ds, 첫 곡률 k, 단위 주법선 V₂ (k < k_floor 이면 없음)."""

    dT_ds: np.ndarray
    k: np.ndarray
    V2: tuple[Maybe[np.ndarray], ...] = field(default_factory=tuple)


# ──────────────────────────────────────────────────────────────
# 적분
# ──────────────────────────────────────────────────────────────
class _UnitFlow:
    """u′ = J⁺·w/‖w‖. 점마다 프레임과 단위 접벡터를 함께 돌려줍니다."""

    def __init__(self, M: Immersion, W: AmbientField) -> None:
        self._M = M
        self._W = W

    def __call__(self, u: np.ndarray) -> Result[tuple[np.ndarray, Frame, np.ndarray], DomainError]:
        def _at(F: Frame) -> Result[tuple[np.ndarray, Frame, np.ndarray], DomainError]:
            w = self._W.value(F)
            if isinstance(w, Err):
                return Err(w.error)
            tangent = F.tangential(w.value)
            norm = float(np.linalg.norm(tangent))
            if norm < VANISHING_TOL:
                return Err(vanishing_field_err())
            T = tangent / norm
            return Ok((F.chart_components(T), F, T))
        return frame_at(self._M, u).and_then(_at)


def integral_curve(
    M: Immersion,
    W: AmbientField,
    u0: Sequence[float],
    s_max: float,
    step: float,
) -> Result[CurveOnManifold, DomainError]:
    """단위화한 접벡터장 W의 적분곡선을 RK4로 적분합니다.

    시작점에서 실패하면 ``Err``. 도중의 정의역 이탈, 특이 프레임, 벡터장 소멸은
    곡선을 잘라서 돌려주고 ``truncated``/``stop_reason``에 기록합니다.
    """
    flow = _UnitFlow(M, W)
    u = np.asarray(u0, dtype=float).reshape(-1)
    start = flow(u)
    if isinstance(start, Err):
        return Err(start.error)

    steps = int(round(s_max / step))
    c0, F0, T0 = start.value
    us, ps, Ts = [u], [F0.p], [T0]
    stop_reason: str | None = None
    k1 = c0
    for _ in range(steps):
        r2 = flow(u + 0.5 * step * k1)
        r3 = r2.and_then(lambda v: flow(u + 0.5 * step * v[0]))
        r4 = r3.and_then(lambda v: flow(u + step * v[0]))
        if isinstance(r4, Err):
            stop_reason = r4.error.code
            break
        k2, k3, k4 = r2.value[0], r3.value[0], r4.value[0]
        u_next = u + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        nxt = flow(u_next)
        if isinstance(nxt, Err):
            stop_reason = nxt.error.code
            break
        u = u_next
        k1, F, T = nxt.value
        us.append(u)
        ps.append(F.p)
        Ts.append(T)

    if stop_reason is not None:
        _log.debug("curve from %s truncated after %d samples: %s", np.asarray(u0).tolist(), len(us), stop_reason)
    return Ok(CurveOnManifold(
        s=step * np.arange(len(us), dtype=float),
        u=np.vstack(us),
        p=np.vstack(ps),
        T=np.vstack(Ts),
        step=float(step),
        immersion=M,
        truncated=stop_reason is not None,
        stop_reason=stop_reason,
    ))


def helix_line(M: Immersion, d: np.ndarray, u0: Sequence[float], s_max: float, step: float) -> Result[CurveOnManifold, DomainError]:
    """방향 d의 헬릭스 선(T = Pd/‖Pd‖의 적분곡선)."""
    return integral_curve(M, HelixTangentField(np.asarray(d, dtype=float)), u0, s_max, step)


def frames_along(c: CurveOnManifold) -> Result[list[Frame], DomainError]:
    return Result.collect(frame_at(c.immersion, u) for u in c.u)


def interior(c: CurveOnManifold) -> np.ndarray:
    """잔차 최댓값을 잴 내부 표본 인덱스 2..N−3."""
    return np.arange(2, max(len(c) - 2, 2))


def _need_samples(c: CurveOnManifold) -> Result[CurveOnManifold, DomainError]:
    if len(c) < MIN_SAMPLES:
        return Err(too_few_samples_err(need=MIN_SAMPLES, got=len(c)))
    return Ok(c)


# ──────────────────────────────────────────────────────────────
# 프레네
# ──────────────────────────────────────────────────────────────
def _derivative(T: np.ndarray, h: float) -> np.ndarray:
    d = np.gradient(T, h, axis=0, edge_order=2)
    if T.shape[0] >= 5:
        d[2:-2] = (-T[4:] + 8.0 * T[3:-1] - 8.0 * T[1:-3] + T[:-4]) / (12.0 * h)
    return d


def frenet(c: CurveOnManifold, *, k_floor: float = K_FLOOR) -> Result[FrenetData, DomainError]:
    """표본 위 차분으로 dT/ds, k = ‖dT/ds‖, V₂ = (dT/ds)/k 를 구합니다."""
    def _build(curve: CurveOnManifold) -> FrenetData:
        raw = _derivative(curve.T, curve.step)
        dT = raw - np.einsum("ij,ij->i", raw, curve.T)[:, None] * curve.T
        k = np.linalg.norm(dT, axis=1)
        V2 = tuple(Some(_value=dT[i] / k[i]) if k[i] >= k_floor else Nothing for i in range(len(k)))
        return FrenetData(dT_ds=dT, k=k, V2=V2)
    return _need_samples(c).map(_build)


def acceleration_split(c: CurveOnManifold) -> Result[tuple[np.ndarray, np.ndarray], DomainError]:
    """표본별 ‖tang(dT/ds)‖ 와 ‖normal(dT/ds)‖."""
    def _split(fd: FrenetData) -> Result[tuple[np.ndarray, np.ndarray], DomainError]:
        return frames_along(c).map(lambda frames: (
            np.array([np.linalg.norm(F.tangential(a)) for F, a in zip(frames, fd.dT_ds)]),
            np.array([np.linalg.norm(F.normal(a)) for F, a in zip(frames, fd.dT_ds)]),
        ))
    return frenet(c).and_then(_split)


def geodesic_residual(c: CurveOnManifold) -> Result[float, DomainError]:
    """내부 표본에서 max ‖tang(dT/ds)‖. 측지선이면 0에 가깝습니다."""
    return acceleration_split(c).map(lambda tn: float(tn[0][interior(c)].max()))


def straightness_residual(c: CurveOnManifold) -> Result[float, DomainError]:
    """내부 표본에서 max ‖dT/ds‖."""
    return frenet(c).map(lambda fd: float(fd.k[interior(c)].max()))


def collinearity_residual(c: CurveOnManifold) -> float:
    """표본들이 양 끝을 잇는 직선에서 떨어진 최대 거리."""
    chord = c.p[-1] - c.p[0]
    length = float(np.linalg.norm(chord))
    offsets = c.p - c.p[0]
    if length == 0.0:
        return float(np.linalg.norm(offsets, axis=1).max())
    e = chord / length
    perp = offsets - np.outer(offsets @ e, e)
    return float(np.linalg.norm(perp, axis=1).max())


# ──────────────────────────────────────────────────────────────
# 법곡률 / 법접속 / 형태 연산자 술어
# ──────────────────────────────────────────────────────────────
def normal_curvature(c: CurveOnManifold) -> Result[np.ndarray, DomainError]:
    """표본별 ‖V(T, T)‖."""
    return frames_along(c).map(
        lambda frames: np.array([np.linalg.norm(second_fundamental_tensor(F, T, T)) for F, T in zip(frames, c.T)])
    )


def normal_connection_norms(c: CurveOnManifold, xi: AmbientField) -> Result[np.ndarray, DomainError]:
    """표본별 ‖∇⊥_T ξ‖ (= ξ′의 법성분 노름)."""
    def _norms(frames: list[Frame]) -> Result[np.ndarray, DomainError]:
        splits = Result.collect(weingarten_along(F, xi, T) for F, T in zip(frames, c.T))
        return splits.map(lambda ws: np.array([np.linalg.norm(w.nabla_perp) for w in ws]))
    return frames_along(c).and_then(_norms)


def _shape_on_tangent(c: CurveOnManifold, xi: AmbientField) -> Result[list[np.ndarray], DomainError]:
    """표본별 A^ξ(T)."""
    return frames_along(c).and_then(
        lambda frames: Result.collect(
            weingarten_along(F, xi, T).map(lambda w: w.A_xi_X) for F, T in zip(frames, c.T)
        )
    )


def asymptotic_residual(c: CurveOnManifold, xi: AmbientField) -> Result[float, DomainError]:
    """max_s |⟨A^ξ(T), T⟩|. ξ가 곡선을 따라 법벡터가 아니면 ``not_normal``."""
    return _shape_on_tangent(c, xi).map(
        lambda A: float(max(abs(float(a @ T)) for a, T in zip(A, c.T)))
    )


def line_of_curvature_residual(c: CurveOnManifold, xi: AmbientField) -> Result[tuple[float, np.ndarray], DomainError]:
    """(max ‖A^ξ(T) − λT‖, 표본별 λ = ⟨A^ξ(T), T⟩)."""
    def _residual(A: list[np.ndarray]) -> tuple[float, np.ndarray]:
        lam = np.array([float(a @ T) for a, T in zip(A, c.T)])
        res = max(float(np.linalg.norm(a - l * T)) for a, l, T in zip(A, lam, c.T))
        return res, lam
    return _shape_on_tangent(c, xi).map(_residual)

