from __future__ import annotations

import math
import numpy as np
import pytest

from shared.primitives.result import Err
from contexts.helix.domain.catalog import SEAM_GAP
from contexts.helix.domain.manifold import (
    Immersion,
    frame_at,
    is_full,
    orthonormalize,
    position,
    project,
    random_points,
    sample_grid,
)

pytestmark = pytest.mark.unit


# ─────────────────────────────────────────────────────────────────────────────
# 생성 검증
# ─────────────────────────────────────────────────────────────────────────────
class TestImmersionCreate:
    @pytest.mark.parametrize(
        ("m", "components", "domain", "fragment"),
        [
            (2, ["u1", "u2"], [(0, 1), (0, 1)], "ambient dimension"),
            (2, ["u1", "u2", "0"], [(0, 1)], "domain needs 2"),
            (1, ["u1", "u1^2"], [(1, 1)], "lo < hi"),
            (1, ["u1", "u1^2"], [(0, math.inf)], "lo < hi"),
        ],
    )
    def test_invalid_shapes(self, m, components, domain, fragment):
        """GIVEN 차원/정의역이 맞지 않는 정의
           WHEN Immersion.create
           THEN immersion_invalid 와 원인 메시지
        """
        r = Immersion.create(name="bad", m=m, components=components, domain=domain)
        assert isinstance(r, Err)
        assert r.error.code == "immersion_invalid"
        assert fragment in r.error.message

    def test_variable_beyond_m_is_parse_error(self):
        """GIVEN m=1인데 성분에 u2
           WHEN Immersion.create
           THEN 파서가 expr_variable_range 로 거부
        """
        r = Immersion.create(name="bad", m=1, components=["u1", "u2"], domain=[(0, 1)])
        assert r.error.code == "expr_variable_range"

    def test_contains_uses_closed_box(self, immersion_of):
        """GIVEN 원뿔 정의역 (-π, π) × [0.2, 3]
           WHEN 경계점과 바깥 점을 검사
           THEN 닫힌 축의 경계는 포함, 바깥/차원 불일치/NaN은 제외
        """
        cone = immersion_of("cone")
        assert cone.contains([0.0, 3.0])
        assert cone.contains([0.0, 0.2])
        assert not cone.contains([0.0, 0.1])
        assert not cone.contains([0.0])
        assert not cone.contains([math.nan, 1.0])

    @pytest.mark.parametrize("name", ["cylinder", "cone", "circle-cylinder-4d", "sphere"])
    def test_angular_seam_is_outside_the_chart(self, immersion_of, name):
        """GIVEN 주기 각 좌표 u1 을 쓰는 카탈로그 몰입
           WHEN 이음매 u1 = ±π 와 그 바로 안쪽을 검사
           THEN 이음매는 제외, 안쪽은 포함
        """
        M = immersion_of(name)
        inner = M.domain[1][0] + 0.1
        assert not M.contains([math.pi, inner])
        assert not M.contains([-math.pi, inner])
        assert M.contains([math.pi - 2 * SEAM_GAP, inner])


# ─────────────────────────────────────────────────────────────────────────────
# 프레임
# ─────────────────────────────────────────────────────────────────────────────
class TestFrame:
    @pytest.mark.parametrize(
        ("name", "u"),
        [
            ("cone", [0.7, 1.4]),
            ("sphere", [-2.0, 1.0]),
            ("helix-cylinder-4d", [0.3, -0.5]),
            ("helix-curve", [1.1]),
        ],
    )
    def test_bases_are_orthonormal_and_complementary(self, immersion_of, name, u):
        """GIVEN 카탈로그 몰입과 정칙점
           WHEN frame_at
           THEN [E | N]은 직교행렬, P = EEᵀ, J⁺J = I
        """
        F = frame_at(immersion_of(name), u).value
        B = np.hstack([F.tangent_basis, F.normal_basis])
        assert B.shape == (F.n, F.n)
        np.testing.assert_allclose(B.T @ B, np.eye(F.n), atol=1e-12)
        np.testing.assert_allclose(F.projector, F.tangent_basis @ F.tangent_basis.T, atol=1e-14)
        np.testing.assert_allclose(F.pullback @ F.jacobian, np.eye(F.m), atol=1e-12)
        np.testing.assert_allclose(F.hessian, np.swapaxes(F.hessian, 1, 2), atol=0)

    def test_cylinder_metric(self, immersion_of):
        """GIVEN 단위 원기둥
           WHEN 임의 점의 계량
           THEN 항등행렬
        """
        F = frame_at(immersion_of("cylinder"), [1.0, 0.5]).value
        np.testing.assert_allclose(F.metric, np.eye(2), atol=1e-15)

    def test_out_of_domain(self, immersion_of):
        """GIVEN 원뿔 정의역 밖의 점
           WHEN frame_at
           THEN out_of_domain
        """
        assert frame_at(immersion_of("cone"), [0.0, 5.0]).error.code == "out_of_domain"

    def test_singular_frame(self):
        """GIVEN 원점에 꼭짓점이 있는 원뿔 차트
           WHEN u2 = 0 에서 frame_at
           THEN singular_frame
        """
        apex = Immersion.create(
            name="apex", m=2, components=["u2*cos(u1)", "u2*sin(u1)", "u2"], domain=[(-3, 3), (0, 1)]
        ).value
        r = frame_at(apex, [0.5, 0.0])
        assert r.error.code == "singular_frame"
        assert "sigma_min/sigma_max" in r.error.message

    def test_project_splits_vector(self, immersion_of):
        """GIVEN 구면 위 점과 임의 벡터
           WHEN project
           THEN 접성분 + 법성분 = 원래 벡터, 두 성분은 직교
        """
        F = frame_at(immersion_of("sphere"), [0.4, 1.2]).value
        w = np.array([0.3, -1.0, 2.0])
        t, nu = project(F, w)
        np.testing.assert_allclose(t + nu, w, atol=1e-15)
        assert abs(float(t @ nu)) < 1e-12

    def test_position(self, immersion_of):
        """GIVEN 원기둥, u = (0, 0.25)
           WHEN position
           THEN (1, 0, 0.25)
        """
        np.testing.assert_allclose(position(immersion_of("cylinder"), [0.0, 0.25]).value, [1.0, 0.0, 0.25])


# ─────────────────────────────────────────────────────────────────────────────
# 완전성 / 격자 / 정규직교화
# ─────────────────────────────────────────────────────────────────────────────
class TestFullnessAndSampling:
    @pytest.mark.parametrize(
        ("name", "full"),
        [("plane", False), ("cone", True), ("circle-cylinder-4d", False), ("helix-cylinder-4d", True)],
    )
    def test_is_full(self, immersion_of, name, full):
        """GIVEN 카탈로그 몰입
           WHEN 10×10 격자로 is_full
           THEN 닫힌 형태로 알려진 값과 같다
        """
        M = immersion_of(name)
        assert is_full(M, sample_grid(M, 10)).value is full

    def test_is_full_needs_enough_points(self, immersion_of):
        """GIVEN 주변 차원 3인데 표본점 2개
           WHEN is_full
           THEN too_few_samples
        """
        M = immersion_of("cone")
        assert is_full(M, np.array([[0.0, 1.0], [0.5, 2.0]])).error.code == "too_few_samples"

    def test_sample_grid_is_cell_centered(self, immersion_of):
        """GIVEN 평면 [-1,1]², 축당 4점
           WHEN sample_grid
           THEN 16×2, 좌표는 ±0.25, ±0.75 (경계 미포함)
        """
        g = sample_grid(immersion_of("plane"), 4)
        assert g.shape == (16, 2)
        assert sorted(set(np.round(g[:, 0], 12))) == [-0.75, -0.25, 0.25, 0.75]

    def test_random_points_respect_margin(self, immersion_of, rng):
        """GIVEN 원뿔, margin 0.1
           WHEN random_points 200개
           THEN 모두 축소 상자 안
        """
        pts = random_points(immersion_of("cone"), 200, rng, margin=0.1)
        assert pts.shape == (200, 2)
        assert pts[:, 1].min() >= 0.2 + 0.1 * 2.8
        assert pts[:, 1].max() <= 3.0 - 0.1 * 2.8

    def test_scaled_keeps_tangent_space(self, immersion_of):
        """GIVEN 원뿔과 2.5배 확대본
           WHEN 같은 점의 사영
           THEN 같다
        """
        cone = immersion_of("cone")
        P1 = frame_at(cone, [0.2, 1.0]).value.projector
        P2 = frame_at(cone.scaled(2.5), [0.2, 1.0]).value.projector
        np.testing.assert_allclose(P1, P2, atol=1e-13)

    def test_orthonormalize_drops_dependent_vectors(self):
        """GIVEN e1, 2·e1, e2
           WHEN drop_below=1e-8
           THEN 두 열만 남는다
        """
        V = np.array([[1.0, 2.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
        Q = orthonormalize(V, drop_below=1e-8)
        assert Q.shape == (3, 2)
        np.testing.assert_allclose(Q.T @ Q, np.eye(2), atol=1e-15)
