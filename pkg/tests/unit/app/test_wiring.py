from __future__ import annotations

from pathlib import Path

import pytest

from app.wiring import DEFAULTS, parse_texts, parse_vector, resolve_manifold

pytestmark = pytest.mark.unit

LINE_DOC = "schema: 1\nname: parabola\nm: 1\nn: 2\ncomponent: u1\ncomponent: u1^2\ndomain: -1, 1\n"


class TestResolveManifold:
    def test_catalog_name(self):
        """GIVEN 카탈로그 이름
           WHEN resolve_manifold
           THEN 카탈로그 항목이 붙은 대상
        """
        s = resolve_manifold("helix-curve").value
        assert s.entry is not None and s.entry.name == "helix-curve"
        assert (s.immersion.m, s.immersion.n) == (1, 3)

    def test_file_path(self, tmp_path: Path):
        """GIVEN .mfd 파일 경로
           WHEN resolve_manifold
           THEN 항목 없는 대상
        """
        path = tmp_path / "parabola.mfd"
        path.write_text(LINE_DOC, encoding="utf-8")
        s = resolve_manifold(str(path)).value
        assert s.entry is None
        assert s.immersion.name == "parabola"

    def test_unknown(self, tmp_path: Path):
        """GIVEN 이름도 파일도 아닌 참조
           WHEN resolve_manifold
           THEN unknown_manifold
        """
        r = resolve_manifold(str(tmp_path / "missing.mfd"))
        assert r.error.code == "unknown_manifold"

    def test_bad_file_keeps_its_diagnostic(self, tmp_path: Path):
        """GIVEN 깨진 정의 파일
           WHEN resolve_manifold
           THEN manifold_file 진단이 그대로 올라온다
        """
        path = tmp_path / "bad.mfd"
        path.write_text("schema: 1\noops\n", encoding="utf-8")
        assert resolve_manifold(str(path)).error.message.startswith("line 2:")


class TestArguments:
    @pytest.mark.parametrize(
        ("text", "expected"),
        [("0,0,1", (0.0, 0.0, 1.0)), (" 1.5 , -2 ", (1.5, -2.0)), ("3", (3.0,))],
    )
    def test_parse_vector(self, text, expected):
        """GIVEN 쉼표 구분 실수
           WHEN parse_vector
           THEN 실수 튜플
        """
        assert parse_vector("direction", text).value == expected

    @pytest.mark.parametrize("text", ["1,x", "", "1,,2", "nan,1", "inf"])
    def test_parse_vector_rejects(self, text):
        """GIVEN 숫자가 아니거나 유한하지 않은 성분
           WHEN parse_vector
           THEN invalid_parameter, 메시지는 인자 이름으로 시작
        """
        r = parse_vector("seed", text)
        assert r.error.code == "invalid_parameter"
        assert r.error.message.startswith("seed:")

    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("1,0", ("1", "0")),
            ("cos(u1); sin(u1); 0", ("cos(u1)", "sin(u1)", "0")),
        ],
    )
    def test_parse_texts(self, text, expected):
        """GIVEN ',' 또는 ';' 로 구분한 식 목록
           WHEN parse_texts
           THEN 앞뒤 공백을 뺀 식 튜플
        """
        assert parse_texts(text) == expected

    def test_defaults(self):
        """GIVEN 기본 설정
           WHEN 값 확인
           THEN 격자 20, 허용 오차 1e-6, 시드 42
        """
        assert (DEFAULTS.grid, DEFAULTS.tol, DEFAULTS.rng_seed) == (20, 1e-6, 42)
