"""가우스/바인가르텐 분해, 형태 연산자, 제2 법공간.

주변 미분 D_X W는 벡터장 W의 차트 방향 미분(n×m)에 X의 차트 성분을 곱해
얻습니다. 모든 미분은 제트와 프레임의 2차 미분으로 닫힌 형태로 계산하며,
이웃 점 차분은 쓰지 않습니다.

    D_X Y = ∇_X Y + V(X, Y)          (접 / 법)
    D_X ξ = −A^ξ(X) + ∇⊥_X ξ         (접 / 법)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Final, Protocol, Sequence

import numpy as np

from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import (
    DomainError,
    direction_dimension_err,
    immersion_invalid_err,
    not_normal_err,
    vanishing_field_err,
)
from contexts.helix.domain.expr import Const, ExprNode, parse
from contexts.helix.domain.jet import eval_jets
from contexts.helix.domain.manifold import Frame, Immersion, frame_at

__all__ = [
    "NORMAL_TOL",
    "KERNEL_RTOL",
    "VANISHING_TOL",
    "FieldJet",
    "AmbientField",
    "TangentField",
    "NormalField",
    "HelixTangentField",
    "HelixNormalField",
    "ProjectedNormalField",
    "GaussSplit",
    "WeingartenSplit",
    "projector_derivative",
    "derivative_along",
    "ensure_normal",
    "gauss_split",
    "gauss_split_at",
    "second_fundamental_form",
    "second_fundamental_tensor",
    "weingarten_split",
    "weingarten_split_at",
    "weingarten_along",
    "shape_operator_matrix",
    "shape_operator_at",
    "second_normal_space",
    "second_normal_space_at",
]

NORMAL_TOL: Final[float] = 1e-8
KERNEL_RTOL: Final[float] = 1e-8
VANISHING_TOL: Final[float] = 1e-10
_KERNEL_ATOL: Final[float] = 1e-12


# ──────────────────────────────────────────────────────────────
# 벡터장
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True, slots=True, eq=False)
class FieldJet:
    """주변 벡터장의 한 점에서의 값 (n,)과 차트 방향 미분 (n×m).

    ``derivative[:, k]`` 는 ∂W/∂u_k 입니다.
    """

    value: np.ndarray
    derivative: np.ndarray

    def along(self, chart_direction: np.ndarray) -> np.ndarray:
        return self.derivative @ chart_direction


class AmbientField(Protocol):
    """프레임마다 값과 1차 미분을 내는 주변 벡터장."""

    def value(self, F: Frame) -> Result[np.ndarray, DomainError]: ...

    def jet(self, F: Frame) -> Result[FieldJet, DomainError]: ...


def _chart_jets(components: Sequence[ExprNode], F: Frame) -> Result[tuple[np.ndarray, np.ndarray], DomainError]:
    return eval_jets(components, F.u).map(
        lambda jets: (np.array([j.value for j in jets]), np.vstack([j.gradient for j in jets]))
    )


@dataclass(frozen=True, slots=True)
class TangentField:
    """차트 성분 a^i(u)로 주어진 접벡터장 Σ a^i ∂f/∂u_i."""

    components: tuple[ExprNode, ...]

    @classmethod
    def create(cls, texts: Sequence[str], m: int) -> Result[TangentField, DomainError]:
        if len(texts) != m:
            return Err(immersion_invalid_err(f"tangent field needs {m} chart components (got={len(texts)})"))
        return Result.collect(parse(t, m) for t in texts).map(lambda cs: cls(tuple(cs)))

    @classmethod
    def constant(cls, a: Sequence[float]) -> TangentField:
        return cls(tuple(Const(float(x)) for x in a))

    @classmethod
    def coordinate(cls, i: int, m: int) -> TangentField:
        """좌표 벡터장 ∂/∂u_{i+1}. ``i``는 0부터 셉니다."""
        return cls.constant([1.0 if k == i else 0.0 for k in range(m)])

    def chart(self, F: Frame) -> Result[np.ndarray, DomainError]:
        return _chart_jets(self.components, F).map(lambda ag: ag[0])

    def value(self, F: Frame) -> Result[np.ndarray, DomainError]:
        return self.chart(F).map(lambda a: F.jacobian @ a)

    def jet(self, F: Frame) -> Result[FieldJet, DomainError]:
        def _build(ag: tuple[np.ndarray, np.ndarray]) -> FieldJet:
            a, grad_a = ag
            # ∂_k (J a) = Σ_i ∂_i∂_k f · a^i + J ∂_k a
            d = np.einsum("nik,i->nk", F.hessian, a) + F.jacobian @ grad_a
            return FieldJet(F.jacobian @ a, d)
        return _chart_jets(self.components, F).map(_build)


@dataclass(frozen=True, slots=True)
class NormalField:
    """주변 성분 n개로 주어진 법벡터장."""

    components: tuple[ExprNode, ...]

    @classmethod
    def create(cls, texts: Sequence[str], m: int) -> Result[NormalField, DomainError]:
        return Result.collect(parse(t, m) for t in texts).map(lambda cs: cls(tuple(cs)))

    @classmethod
    def constant(cls, w: Sequence[float]) -> NormalField:
        return cls(tuple(Const(float(x)) for x in w))

    def value(self, F: Frame) -> Result[np.ndarray, DomainError]:
        return self.jet(F).map(lambda j: j.value)

    def jet(self, F: Frame) -> Result[FieldJet, DomainError]:
        if len(self.components) != F.n:
            return Err(direction_dimension_err(expected=F.n, got=len(self.components)))
        return _chart_jets(self.components, F).map(lambda vg: FieldJet(vg[0], vg[1]))


def projector_derivative(F: Frame) -> np.ndarray:
    """접사영 P의 차트 미분 ∂P/∂u_k (m×n×n).

    ∂_k P = (I−P)·∂_kJ·J⁺ + (J⁺)ᵀ·∂_kJᵀ·(I−P)
    """
    Q = np.eye(F.n) - F.projector
    out = np.empty((F.m, F.n, F.n))
    for k in range(F.m):
        dJ = F.hessian[:, :, k]
        left = Q @ dJ @ F.pullback
        out[k] = left + left.T
    return out


def _tangent_part_jet(F: Frame, d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    dP = projector_derivative(F)
    return F.projector @ d, np.einsum("kab,b->ak", dP, d)


def _unit_jet(v: np.ndarray, dv: np.ndarray) -> Result[FieldJet, DomainError]:
    r = float(np.linalg.norm(v))
    if r < VANISHING_TOL:
        return Err(vanishing_field_err())
    w = v / r
    return Ok(FieldJet(w, (dv - np.outer(w, w @ dv)) / r))


@dataclass(frozen=True, slots=True, eq=False)
class HelixTangentField:
    """방향 d의 단위 접성분 T = Pd/‖Pd‖."""

    direction: np.ndarray

    def value(self, F: Frame) -> Result[np.ndarray, DomainError]:
        t = F.projector @ self.direction
        r = float(np.linalg.norm(t))
        return Err(vanishing_field_err()) if r < VANISHING_TOL else Ok(t / r)

    def jet(self, F: Frame) -> Result[FieldJet, DomainError]:
        t, dt = _tangent_part_jet(F, self.direction)
        return _unit_jet(t, dt)


@dataclass(frozen=True, slots=True, eq=False)
class HelixNormalField:
    """방향 d의 단위 법성분 ξ = (I−P)d/‖(I−P)d‖."""

    direction: np.ndarray

    def value(self, F: Frame) -> Result[np.ndarray, DomainError]:
        nu = self.direction - F.projector @ self.direction
        r = float(np.linalg.norm(nu))
        return Err(vanishing_field_err()) if r < VANISHING_TOL else Ok(nu / r)

    def jet(self, F: Frame) -> Result[FieldJet, DomainError]:
        t, dt = _tangent_part_jet(F, self.direction)
        return _unit_jet(self.direction - t, -dt)


@dataclass(frozen=True, slots=True, eq=False)
class ProjectedNormalField:
    """고정 벡터 w의 법성분 (I−P)w. 임의의 법벡터장 표본으로 씁니다."""

    vector: np.ndarray

    def value(self, F: Frame) -> Result[np.ndarray, DomainError]:
        return Ok(self.vector - F.projector @ self.vector)

    def jet(self, F: Frame) -> Result[FieldJet, DomainError]:
        t, dt = _tangent_part_jet(F, self.vector)
        return Ok(FieldJet(self.vector - t, -dt))


def derivative_along(F: Frame, W: AmbientField, x: np.ndarray) -> Result[FieldJet, DomainError]:
    """W의 제트와 D_x W를 함께 돌려줍니다. 반환 제트의 ``derivative``는 (n,) 벡터."""
    c = F.chart_components(x)
    return W.jet(F).map(lambda j: FieldJet(j.value, j.along(c)))


def ensure_normal(F: Frame, xi: np.ndarray) -> Result[np.ndarray, DomainError]:
    tangential = float(np.linalg.norm(F.projector @ xi))
    if tangential >= NORMAL_TOL:
        return Err(not_normal_err(tangential=tangential))
    return Ok(xi)


# ──────────────────────────────────────────────────────────────
# 가우스 / 바인가르텐
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True, slots=True, eq=False)
class GaussSplit:
    nabla_XY: np.ndarray
    V_XY: np.ndarray

    @property
    def ambient(self) -> np.ndarray:
        return self.nabla_XY + self.V_XY


@dataclass(frozen=True, slots=True, eq=False)
class WeingartenSplit:
    A_xi_X: np.ndarray
    nabla_perp: np.ndarray

    @property
    def ambient(self) -> np.ndarray:
        return self.nabla_perp - self.A_xi_X


def gauss_split_at(F: Frame, X: AmbientField, Y: AmbientField) -> Result[GaussSplit, DomainError]:
    def _split(x: np.ndarray) -> Result[GaussSplit, DomainError]:
        return derivative_along(F, Y, x).map(
            lambda j: GaussSplit(F.tangential(j.derivative), F.normal(j.derivative))
        )
    return X.value(F).and_then(_split)


def gauss_split(M: Immersion, u: Sequence[float], X: AmbientField, Y: AmbientField) -> Result[GaussSplit, DomainError]:
    """점 u에서 D_X Y = ∇_X Y + V(X,Y) 로 분해합니다.

    Examples:
        >>> from contexts.helix.domain.catalog import get
        >>> cyl = get("cylinder").value.immersion
        >>> X = TangentField.coordinate(0, 2)
        >>> (gauss_split(cyl, [0.0, 0.0], X, X).value.V_XY.round(12) + 0.0).tolist()
        [-1.0, 0.0, 0.0]
    """
    return frame_at(M, u).and_then(lambda F: gauss_split_at(F, X, Y))


def second_fundamental_form(M: Immersion, u: Sequence[float], X: AmbientField, Y: AmbientField) -> Result[np.ndarray, DomainError]:
    return gauss_split(M, u, X, Y).map(lambda g: g.V_XY)


def second_fundamental_tensor(F: Frame, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """점별 V(x, y). x, y는 주변 접벡터, 결과는 법벡터."""
    cx, cy = F.chart_components(x), F.chart_components(y)
    return F.normal(np.einsum("nij,i,j->n", F.hessian, cx, cy))


def weingarten_along(F: Frame, xi: AmbientField, x: np.ndarray) -> Result[WeingartenSplit, DomainError]:
    """주변 접벡터 x 방향의 바인가르텐 분해. ξ의 값이 법벡터가 아니면 ``not_normal``."""
    return derivative_along(F, xi, x).and_then(
        lambda j: ensure_normal(F, j.value).map(
            lambda _: WeingartenSplit(F.tangential(-j.derivative), F.normal(j.derivative))
        )
    )


def weingarten_split_at(F: Frame, X: AmbientField, xi: AmbientField) -> Result[WeingartenSplit, DomainError]:
    return X.value(F).and_then(lambda x: weingarten_along(F, xi, x))


def weingarten_split(M: Immersion, u: Sequence[float], X: AmbientField, xi: AmbientField) -> Result[WeingartenSplit, DomainError]:
    """점 u에서 D_X ξ = −A^ξ(X) + ∇⊥_X ξ 로 분해합니다. ξ가 법벡터가 아니면 ``not_normal``."""
    return frame_at(M, u).and_then(lambda F: weingarten_split_at(F, X, xi))


# ──────────────────────────────────────────────────────────────
# 형태 연산자 / 제2 법공간
# ──────────────────────────────────────────────────────────────
def shape_operator_at(F: Frame, xi: np.ndarray) -> Result[np.ndarray, DomainError]:
    """정규직교 접기저에서의 형태 연산자 S_ij = ⟨V(E_i, E_j), ξ⟩ (m×m, 대칭)."""
    def _matrix(v: np.ndarray) -> np.ndarray:
        C = F.pullback @ F.tangent_basis
        S = C.T @ np.einsum("n,nij->ij", v, F.hessian) @ C
        return 0.5 * (S + S.T)
    return ensure_normal(F, np.asarray(xi, dtype=float)).map(_matrix)


def shape_operator_matrix(M: Immersion, u: Sequence[float], xi_value: Sequence[float]) -> Result[np.ndarray, DomainError]:
    xi = np.asarray(xi_value, dtype=float)
    if xi.size != M.n:
        return Err(direction_dimension_err(expected=M.n, got=xi.size))
    return frame_at(M, u).and_then(lambda F: shape_operator_at(F, xi))


def second_normal_space_at(F: Frame) -> np.ndarray:
    """{ξ 법벡터 : A^ξ = 0} 의 정규직교 기저 (n×r).

    법기저 N_j마다 S(N_j)를 펼쳐 만든 선형사상 ξ ↦ S(ξ)의 핵을 SVD로 구합니다.
    특이값이 최대값의 1e-8배 이하인 방향을 핵으로 봅니다.
    """
    N = F.normal_basis
    q = N.shape[1]
    if q == 0:
        return np.zeros((F.n, 0))
    C = F.pullback @ F.tangent_basis
    L = np.column_stack([(C.T @ np.einsum("n,nij->ij", N[:, j], F.hessian) @ C).reshape(-1) for j in range(q)])
    _, sigma, Vt = np.linalg.svd(L, full_matrices=True)
    smax = float(sigma[0]) if sigma.size else 0.0
    if smax < _KERNEL_ATOL:
        kernel_rows = list(range(q))
    else:
        kernel_rows = [i for i in range(q) if i >= sigma.size or sigma[i] <= KERNEL_RTOL * smax]
    basis = N @ Vt[kernel_rows].T if kernel_rows else np.zeros((F.n, 0))
    for j in range(basis.shape[1]):
        pivot = int(np.argmax(np.abs(basis[:, j]) > 1e-12))
        if basis[pivot, j] < 0:
            basis[:, j] = -basis[:, j]
    return basis


def second_normal_space(M: Immersion, u: Sequence[float]) -> Result[np.ndarray, DomainError]:
    return frame_at(M, u).map(second_normal_space_at)
