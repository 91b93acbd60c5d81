"""몰입 f: U ⊂ R^m → R^n 과 점별 프레임(접/법 정규직교 기저, 계량, 사영).

프레임은 점마다 새로 계산합니다(보간 없음). 접기저는 야코비안 열벡터를
수정 그람-슈미트(재직교화 1회 포함)로 정규직교화하고, 법기저는 표준기저
e_1..e_n을 접기저에 대해 차례로 직교화해 0에 가까운 벡터(노름 1e-8 이하)를
버리는 식으로 채웁니다. 따라서 같은 점에서는 항상 같은 프레임이 나옵니다.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Final, Sequence

import numpy as np

from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import (
    DomainError,
    immersion_invalid_err,
    out_of_domain_err,
    singular_frame_err,
    too_few_samples_err,
)
from contexts.helix.domain.expr import Binary, BinaryOp, Const, ExprNode, parse, to_text, variables
from contexts.helix.domain.jet import eval_jets

__all__ = [
    "SINGULAR_RTOL",
    "NORMAL_DROP_TOL",
    "FULLNESS_RTOL",
    "Immersion",
    "Frame",
    "frame_at",
    "position",
    "project",
    "is_full",
    "sample_grid",
    "random_points",
    "orthonormalize",
]

_log = logging.getLogger(__name__)

SINGULAR_RTOL: Final[float] = 1e-10
NORMAL_DROP_TOL: Final[float] = 1e-8
FULLNESS_RTOL: Final[float] = 1e-8
_DOMAIN_SLACK: Final[float] = 1e-12


# ──────────────────────────────────────────────────────────────
# 몰입
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True, slots=True, kw_only=True)
class Immersion:
    """차트 하나로 주어진 몰입.

    Attributes:
        name: 식별용 이름.
        m: 내재 차원.
        n: 주변 차원 (n > m ≥ 1).
        components: n개의 좌표 함수(각각 변수 u1..um).
        domain: 축별 닫힌 구간 ``(lo, hi)`` m개.
    """

    name: str
    m: int
    n: int
    components: tuple[ExprNode, ...]
    domain: tuple[tuple[float, float], ...]

    @classmethod
    def from_nodes(
        cls,
        *,
        name: str,
        m: int,
        components: Sequence[ExprNode],
        domain: Sequence[tuple[float, float]],
    ) -> Result[Immersion, DomainError]:
        """AST로부터 검증된 몰입을 만듭니다."""
        n = len(components)
        if m < 1:
            return Err(immersion_invalid_err(f"intrinsic dimension must be >= 1 (got={m})"))
        if n <= m:
            return Err(immersion_invalid_err(f"ambient dimension must exceed m={m} (got n={n})"))
        if len(domain) != m:
            return Err(immersion_invalid_err(f"domain needs {m} intervals (got={len(domain)})"))
        box: list[tuple[float, float]] = []
        for axis, (lo, hi) in enumerate(domain, start=1):
            lo, hi = float(lo), float(hi)
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
                return Err(immersion_invalid_err(f"domain interval for u{axis} must satisfy lo < hi (got [{lo}, {hi}])"))
            box.append((lo, hi))
        for k, c in enumerate(components, start=1):
            used = variables(c)
            if used and max(used) > m:
                return Err(immersion_invalid_err(f"component {k} uses u{max(used)} but m={m}"))
        return Ok(cls(name=name, m=m, n=n, components=tuple(components), domain=tuple(box)))

    @classmethod
    def create(
        cls,
        *,
        name: str,
        m: int,
        components: Sequence[str],
        domain: Sequence[tuple[float, float]],
    ) -> Result[Immersion, DomainError]:
        """수식 문자열로부터 몰입을 만듭니다.

        Examples:
            >>> cyl = Immersion.create(
            ...     name="cylinder", m=2,
            ...     components=["cos(u1)", "sin(u1)", "u2"],
            ...     domain=[(-3.14, 3.14), (-1.0, 1.0)],
            ... )
            >>> cyl.is_ok()
            True
        """
        nodes = Result.collect(parse(text, m) for text in components)
        return nodes.and_then(lambda cs: cls.from_nodes(name=name, m=m, components=cs, domain=domain))

    def contains(self, u: Sequence[float] | np.ndarray) -> bool:
        point = np.asarray(u, dtype=float).reshape(-1)
        if point.size != self.m or not np.all(np.isfinite(point)):
            return False
        return all(lo - _DOMAIN_SLACK <= x <= hi + _DOMAIN_SLACK for x, (lo, hi) in zip(point, self.domain))

    def scaled(self, factor: float) -> Immersion:
        """``factor · f`` 로 확대한 몰입. 접공간은 바뀌지 않습니다."""
        return Immersion(
            name=f"{self.name}*{factor:g}",
            m=self.m,
            n=self.n,
            components=tuple(Binary(BinaryOp.MUL, Const(float(factor)), c) for c in self.components),
            domain=self.domain,
        )

    def component_texts(self) -> tuple[str, ...]:
        return tuple(to_text(c) for c in self.components)


# ──────────────────────────────────────────────────────────────
# 프레임
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True, slots=True, kw_only=True, eq=False)
class Frame:
    """차트 점 하나에서의 외재 기하 데이터.

    Attributes:
        u: 차트 점 (m,).
        p: 주변 점 f(u) (n,).
        jacobian: ∂f/∂u (n×m).
        hessian: ∂²f/∂u_i∂u_j (n×m×m), 뒤 두 축에 대해 대칭.
        tangent_basis: 정규직교 접기저 E (n×m).
        normal_basis: 정규직교 법기저 N (n×(n−m)).
        metric: G = JᵀJ (m×m).
        projector: 접사영 P = E·Eᵀ (n×n).
        pullback: J⁺ = G⁻¹Jᵀ (m×n). 접벡터 x의 차트 성분은 ``pullback @ x``.
    """

    u: np.ndarray
    p: np.ndarray
    jacobian: np.ndarray
    hessian: np.ndarray
    tangent_basis: np.ndarray
    normal_basis: np.ndarray
    metric: np.ndarray
    projector: np.ndarray
    pullback: np.ndarray

    @property
    def m(self) -> int:
        return self.jacobian.shape[1]

    @property
    def n(self) -> int:
        return self.jacobian.shape[0]

    def chart_components(self, x: np.ndarray) -> np.ndarray:
        """주변 접벡터 x를 좌표 기저 ∂f/∂u_i 의 성분으로 바꿉니다."""
        return self.pullback @ x

    def push(self, c: np.ndarray) -> np.ndarray:
        """차트 성분 c를 주변 벡터 J·c 로 보냅니다."""
        return self.jacobian @ c

    def tangential(self, w: np.ndarray) -> np.ndarray:
        return self.projector @ w

    def normal(self, w: np.ndarray) -> np.ndarray:
        return w - self.projector @ w


def orthonormalize(
    vectors: np.ndarray,
    *,
    against: np.ndarray | None = None,
    drop_below: float | None = None,
    limit: int | None = None,
) -> np.ndarray:
    """열벡터들을 수정 그람-슈미트(2회 통과)로 정규직교화합니다.

    Args:
        vectors: 처리할 열벡터 (n×k).
        against: 이미 정규직교인 열벡터들 (n×j). 결과는 이들과 직교합니다.
        drop_below: 주어지면 잔차 노름이 이 값 이하인 벡터를 버립니다.
        limit: 결과 열 개수의 상한.

    Returns:
        np.ndarray: 새로 얻은 정규직교 열벡터 (n×r).
    """
    n = vectors.shape[0]
    basis: list[np.ndarray] = [] if against is None else [against[:, j] for j in range(against.shape[1])]
    fixed = len(basis)
    for j in range(vectors.shape[1]):
        if limit is not None and len(basis) - fixed >= limit:
            break
        v = np.array(vectors[:, j], dtype=float)
        for _ in range(2):
            for q in basis:
                v -= (q @ v) * q
        norm = float(np.linalg.norm(v))
        if drop_below is not None and norm <= drop_below:
            continue
        basis.append(v / norm)
    fresh = basis[fixed:]
    return np.column_stack(fresh) if fresh else np.zeros((n, 0))


def _jets_at(M: Immersion, point: np.ndarray) -> Result[tuple[np.ndarray, np.ndarray, np.ndarray], DomainError]:
    if not M.contains(point):
        return Err(out_of_domain_err(point.tolist()))
    return eval_jets(M.components, point).map(
        lambda jets: (
            np.array([j.value for j in jets]),
            np.vstack([j.gradient for j in jets]),
            np.stack([j.hessian for j in jets]),
        )
    )


def frame_at(M: Immersion, u: Sequence[float] | np.ndarray) -> Result[Frame, DomainError]:
    """차트 점 u에서 프레임을 계산합니다.

    Returns:
        Result[Frame, DomainError]: 정의역 밖이면 ``out_of_domain``, 야코비안의
        σ_min/σ_max < 1e-10 이면 ``singular_frame``.
    """
    point = np.asarray(u, dtype=float).reshape(-1)
    if point.size != M.m:
        return Err(out_of_domain_err(point.tolist()))
    jets = _jets_at(M, point)
    if isinstance(jets, Err):
        return Err(jets.error)
    p, J, H = jets.value

    sigma = np.linalg.svd(J, compute_uv=False)
    if sigma[0] == 0.0 or sigma[-1] < SINGULAR_RTOL * sigma[0]:
        ratio = 0.0 if sigma[0] == 0.0 else float(sigma[-1] / sigma[0])
        return Err(singular_frame_err(u=point.tolist(), ratio=ratio))

    E = orthonormalize(J)
    N = orthonormalize(np.eye(M.n), against=E, drop_below=NORMAL_DROP_TOL, limit=M.n - M.m)
    G = J.T @ J
    return Ok(Frame(
        u=point,
        p=p,
        jacobian=J,
        hessian=H,
        tangent_basis=E,
        normal_basis=N,
        metric=G,
        projector=E @ E.T,
        pullback=np.linalg.solve(G, J.T),
    ))


def position(M: Immersion, u: Sequence[float] | np.ndarray) -> Result[np.ndarray, DomainError]:
    """주변 점 f(u)만 계산합니다."""
    point = np.asarray(u, dtype=float).reshape(-1)
    if not M.contains(point):
        return Err(out_of_domain_err(point.tolist()))
    return eval_jets(M.components, point).map(lambda jets: np.array([j.value for j in jets]))


def project(F: Frame, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """w를 접성분과 법성분으로 분해합니다. 두 성분의 합은 w입니다."""
    w = np.asarray(w, dtype=float)
    tangential = F.projector @ w
    return tangential, w - tangential


def is_full(M: Immersion, sample_grid: np.ndarray) -> Result[bool, DomainError]:
    """표본점 구름이 어떤 초평면에도 들어가지 않는지(수치 계수 n) 판정합니다.

    중심화한 표본 행렬의 최소 특이값이 최대 특이값의 1e-8배보다 크면 참입니다.
    """
    found = [position(M, u).to_maybe() for u in np.atleast_2d(sample_grid)]
    points = [p.to_optional() for p in found if p.is_some()]
    if len(points) < len(found):
        _log.debug("fullness: skipped %d of %d sample points", len(found) - len(points), len(found))
    if len(points) < M.n + 1:
        return Err(too_few_samples_err(need=M.n + 1, got=len(points)))
    cloud = np.vstack(points)
    sigma = np.linalg.svd(cloud - cloud.mean(axis=0), compute_uv=False)
    return Ok(bool(sigma[0] > 0.0 and sigma[M.n - 1] > FULLNESS_RTOL * sigma[0]))


# ──────────────────────────────────────────────────────────────
# 표본 격자
# ──────────────────────────────────────────────────────────────
def sample_grid(M: Immersion, per_axis: int) -> np.ndarray:
    """정의역 안쪽의 셀 중심 텐서 격자 (per_axis^m × m). 경계점은 포함하지 않습니다."""
    axes = [lo + (np.arange(per_axis) + 0.5) * (hi - lo) / per_axis for lo, hi in M.domain]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([g.reshape(-1) for g in mesh])


def random_points(M: Immersion, count: int, rng: np.random.Generator, *, margin: float = 0.1) -> np.ndarray:
    """정의역을 축마다 ``margin`` 비율만큼 줄인 상자에서 균일 표본을 뽑습니다."""
    lo = np.array([a + margin * (b - a) for a, b in M.domain])
    hi = np.array([b - margin * (b - a) for a, b in M.domain])
    return lo + (hi - lo) * rng.random((count, M.m))
