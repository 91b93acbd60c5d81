from __future__ import annotations

import math
import numpy as np
import pytest

from contexts.helix.domain import catalog
from contexts.helix.domain.connection import NormalField, ensure_normal, second_normal_space
from contexts.helix.domain.helix import check_helix
from contexts.helix.domain.manifold import frame_at, is_full, sample_grid

pytestmark = pytest.mark.unit

NAMES = ["plane", "cylinder", "cone", "helix-curve", "helix-cylinder-4d", "circle-cylinder-4d", "sphere"]


def _center(entry: catalog.CatalogEntry) -> list[float]:
    return [(lo + hi) / 2.0 for lo, hi in entry.immersion.domain]


def test_names_are_stable():
    """GIVEN 내장 카탈로그
       WHEN names()
       THEN 정해진 순서의 7개 이름
    """
    assert catalog.names() == NAMES
    assert [e.name for e in catalog.entries()] == NAMES


def test_unknown_name():
    """GIVEN 없는 이름
       WHEN get
       THEN unknown_manifold
    """
    assert catalog.get("torus").error.code == "unknown_manifold"


@pytest.mark.parametrize("name", NAMES)
def test_known_directions_are_helix_directions(name: str):
    """GIVEN 카탈로그 항목의 알려진 헬릭스 방향
       WHEN 10×10 격자에서 check_helix
       THEN 헬릭스이고 평균각이 기록된 θ 와 같다
    """
    entry = catalog.get(name).value
    M = entry.immersion
    grid = sample_grid(M, 10)
    for known in entry.helix_directions:
        assert math.isclose(float(np.linalg.norm(known.direction)), 1.0, abs_tol=1e-12)
        v = check_helix(M, known.direction, grid, 1e-9).value
        assert v.is_helix, known
        assert v.theta_mean == pytest.approx(known.theta, abs=1e-9)


@pytest.mark.parametrize("name", NAMES)
def test_second_normal_dimension(name: str):
    """GIVEN 카탈로그 항목
       WHEN 정의역 중심에서 second_normal_space
       THEN 기록된 차원
    """
    entry = catalog.get(name).value
    assert second_normal_space(entry.immersion, _center(entry)).value.shape[1] == entry.second_normal_dim


@pytest.mark.parametrize("name", NAMES)
def test_fullness(name: str):
    """GIVEN 카탈로그 항목
       WHEN is_full (격자 10)
       THEN 기록된 값
    """
    entry = catalog.get(name).value
    assert is_full(entry.immersion, sample_grid(entry.immersion, 10)).value is entry.full


@pytest.mark.parametrize("name", NAMES)
def test_named_normals_are_normal(name: str):
    """GIVEN 카탈로그 항목의 이름 붙은 법벡터장
       WHEN 정의역 중심과 임의 점에서 값
       THEN 접성분이 1e-8 미만, 곡선 예시는 있는 법벡터장을 가리킨다
    """
    entry = catalog.get(name).value
    M = entry.immersion
    points = [_center(entry), [lo + 0.3 * (hi - lo) for lo, hi in M.domain]]
    for texts in entry.normals.values():
        xi = NormalField.create(list(texts), M.m).value
        for u in points:
            F = frame_at(M, u).value
            assert ensure_normal(F, xi.value(F).value).is_ok()
    if entry.curve_demo is not None:
        assert entry.curve_demo.normal in entry.normals
        assert len(entry.curve_demo.field) == M.m
