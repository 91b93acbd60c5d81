from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from contexts.helix.adapters.manifold_file import load_manifold, parse_manifold_text
from contexts.helix.domain.manifold import position

pytestmark = pytest.mark.unit

CONE_LINES = [
    "# cone as a file",
    "schema: 1",
    "name: my-cone",
    "m: 2",
    "n: 3",
    "component: u2*cos(u1)",
    "component: u2*sin(u1)",
    "component: u2",
    "domain: -3, 3   # angle",
    "domain: 0.2, 3",
]


def _doc(lines: list[str]) -> str:
    return "\n".join(lines) + "\n"


def _replace(lineno: int, text: str) -> list[str]:
    lines = list(CONE_LINES)
    lines[lineno - 1] = text
    return lines


# ─────────────────────────────────────────────────────────────────────────────
# 정상 문서
# ─────────────────────────────────────────────────────────────────────────────
class TestValidDocument:
    def test_parses_cone(self):
        """GIVEN 주석과 빈 칸이 섞인 원뿔 정의
           WHEN parse_manifold_text
           THEN 이름/차원/정의역이 맞고 성분 식이 평가된다
        """
        M = parse_manifold_text(_doc(CONE_LINES)).value
        assert (M.name, M.m, M.n) == ("my-cone", 2, 3)
        assert M.domain == ((-3.0, 3.0), (0.2, 3.0))
        assert M.component_texts()[2] == "u2"

    def test_blank_lines_and_comments_are_ignored(self):
        """GIVEN 빈 줄과 주석만 있는 줄이 끼어 있는 문서
           WHEN parse_manifold_text
           THEN 정상 파싱
        """
        lines = CONE_LINES[:5] + ["", "   # nothing here", ""] + CONE_LINES[5:]
        assert parse_manifold_text(_doc(lines)).is_ok()

    def test_empty_name_falls_back(self):
        """GIVEN 'name:' 값이 비어 있음
           WHEN parse_manifold_text
           THEN 이름은 unnamed
        """
        assert parse_manifold_text(_doc(_replace(3, "name:"))).value.name == "unnamed"


# ─────────────────────────────────────────────────────────────────────────────
# 진단 (줄 번호)
# ─────────────────────────────────────────────────────────────────────────────
class TestDiagnostics:
    @pytest.mark.parametrize(
        ("lines", "prefix", "fragment"),
        [
            (_replace(5, "n 3"), "line 5:", "expected 'key: value'"),
            (CONE_LINES + ["name: again"], "line 11:", "duplicate key 'name'"),
            (CONE_LINES + ["colour: red"], "line 11:", "unknown key 'colour'"),
            (_replace(2, "# no schema"), "line 11:", "missing key 'schema'"),
            (_replace(2, "schema: 2"), "line 2:", "unsupported schema '2'"),
            (_replace(4, "m: two"), "line 4:", "'m' must be an integer (got 'two')"),
            (_replace(5, "n: 2"), "line 5:", "'n' must exceed m=2"),
            (CONE_LINES + ["component: 1"], "line 11:", "expected 3 'component' lines (got 4)"),
            (_replace(10, "# one domain only"), "line 11:", "expected 2 'domain' lines (got 1)"),
            (_replace(8, "component: u3"), "line 8:", "variable index out of range: u3"),
            (_replace(10, "domain: 3, 0.2"), "line 10:", "domain needs finite lo < hi"),
            (_replace(10, "domain: 0.2"), "line 10:", "domain needs 'lo, hi'"),
            (_replace(10, "domain: a, b"), "line 10:", "domain bounds must be numbers"),
        ],
    )
    def test_reports_line(self, lines, prefix, fragment):
        """GIVEN 한 줄이 잘못된 정의 파일
           WHEN parse_manifold_text
           THEN manifold_file, 메시지는 'line N:' 으로 시작하고 원인을 담는다
        """
        r = parse_manifold_text(_doc(lines))
        assert r.error.code == "manifold_file"
        assert r.error.message.startswith(prefix)
        assert fragment in r.error.message


# ─────────────────────────────────────────────────────────────────────────────
# 파일 읽기
# ─────────────────────────────────────────────────────────────────────────────
class TestLoad:
    def test_load_from_disk(self, tmp_path: Path):
        """GIVEN 디스크에 쓴 정의 파일
           WHEN load_manifold
           THEN 카탈로그 원뿔과 같은 점을 준다
        """
        path = tmp_path / "cone.mfd"
        path.write_text(_doc(CONE_LINES), encoding="utf-8")
        M = load_manifold(path).value
        np.testing.assert_allclose(position(M, [0.0, 2.0]).value, [2.0, 0.0, 2.0])

    def test_missing_file(self, tmp_path: Path):
        """GIVEN 없는 경로
           WHEN load_manifold
           THEN io_failure
        """
        assert load_manifold(tmp_path / "nope.mfd").error.code == "io_failure"
