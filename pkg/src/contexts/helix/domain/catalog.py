"""정답이 알려진 내장 몰입 목록.

각 항목의 헬릭스 각, 제2 법공간 차원, 완전성은 닫힌 형태로 계산한 값이며
테스트와 CLI 데모가 이 값을 기준으로 삼습니다.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cache
from typing import Final, Mapping

from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import DomainError, unknown_manifold_err
from contexts.helix.domain.manifold import Immersion

__all__ = ["SEAM_GAP", "KnownDirection", "CurveDemo", "CatalogEntry", "get", "names", "entries"]

_S2: Final[float] = 1.0 / math.sqrt(2.0)
SEAM_GAP: Final[float] = 1e-9
"""주기 각 좌표는 열린 구간 (−π, π) 로 둡니다. 이음매 ±π 는 차트 밖입니다."""
_ANGLE: Final[tuple[float, float]] = (-math.pi + SEAM_GAP, math.pi - SEAM_GAP)


@dataclass(frozen=True, slots=True)
class KnownDirection:
    direction: tuple[float, ...]
    theta: float


@dataclass(frozen=True, slots=True)
class CurveDemo:
    """곡률선 예시: 차트 성분으로 준 접벡터장, 법벡터장 이름, 시작점."""

    field: tuple[str, ...]
    normal: str
    seed: tuple[float, ...]


@dataclass(frozen=True, slots=True, kw_only=True)
class CatalogEntry:
    name: str
    immersion: Immersion
    helix_directions: tuple[KnownDirection, ...]
    second_normal_dim: int
    full: bool
    notes: str
    normals: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    curve_demo: CurveDemo | None = None


def _immersion(name: str, m: int, components: list[str], domain: list[tuple[float, float]]) -> Immersion:
    match Immersion.create(name=name, m=m, components=components, domain=domain):
        case Ok(value=M):
            return M
        case Err(error=e):
            raise RuntimeError(f"catalog entry {name} is malformed: {e.message}")
    raise AssertionError("unreachable")


@cache
def _registry() -> dict[str, CatalogEntry]:
    pi = math.pi
    items = [
        CatalogEntry(
            name="plane",
            immersion=_immersion("plane", 2, ["u1", "u2", "0"], [(-1.0, 1.0), (-1.0, 1.0)]),
            helix_directions=(KnownDirection((1.0, 0.0, 0.0), 0.0), KnownDirection((_S2, 0.0, _S2), pi / 4)),
            second_normal_dim=1,
            full=False,
            notes="flat chart of the plane z=0; every unit direction is a helix direction",
            normals={"up": ("0", "0", "1")},
        ),
        CatalogEntry(
            name="cylinder",
            immersion=_immersion("cylinder", 2, ["cos(u1)", "sin(u1)", "u2"], [_ANGLE, (-1.0, 1.0)]),
            helix_directions=(KnownDirection((0.0, 0.0, 1.0), 0.0),),
            second_normal_dim=0,
            full=True,
            notes="unit circular cylinder; the axis is tangent everywhere (theta=0)",
            normals={"outward": ("cos(u1)", "sin(u1)", "0")},
            curve_demo=CurveDemo(field=("1", "0"), normal="outward", seed=(0.0, 0.0)),
        ),
        CatalogEntry(
            name="cone",
            immersion=_immersion("cone", 2, ["u2*cos(u1)", "u2*sin(u1)", "u2"], [_ANGLE, (0.2, 3.0)]),
            helix_directions=(KnownDirection((0.0, 0.0, 1.0), pi / 4),),
            second_normal_dim=0,
            full=True,
            notes="unit-slope cone without apex; helix lines are the rulings; unit normal (cos u1, sin u1, -1)/sqrt(2)",
            normals={"unit": ("cos(u1)/sqrt(2)", "sin(u1)/sqrt(2)", "-1/sqrt(2)")},
            curve_demo=CurveDemo(field=("1", "0"), normal="unit", seed=(0.0, 1.0)),
        ),
        CatalogEntry(
            name="helix-curve",
            immersion=_immersion(
                "helix-curve", 1,
                ["cos(u1/sqrt(2))", "sin(u1/sqrt(2))", "u1/sqrt(2)"],
                [(-pi, pi)],
            ),
            helix_directions=(KnownDirection((0.0, 0.0, 1.0), pi / 4),),
            second_normal_dim=1,
            full=True,
            notes="circular helix by arc length; curvature 1/2; second normal space spanned by the binormal",
            normals={
                "principal": ("-cos(u1/sqrt(2))", "-sin(u1/sqrt(2))", "0"),
                "binormal": ("sin(u1/sqrt(2))/sqrt(2)", "-cos(u1/sqrt(2))/sqrt(2)", "1/sqrt(2)"),
            },
        ),
        CatalogEntry(
            name="helix-cylinder-4d",
            immersion=_immersion(
                "helix-cylinder-4d", 2, ["cos(u1)", "sin(u1)", "u1", "u2"], [(-pi, pi), (-1.0, 1.0)]
            ),
            helix_directions=(
                KnownDirection((0.0, 0.0, 1.0, 0.0), pi / 4),
                KnownDirection((0.0, 0.0, _S2, _S2), pi / 6),
                KnownDirection((0.0, 0.0, 0.0, 1.0), 0.0),
            ),
            second_normal_dim=1,
            full=True,
            notes="helix times a line in R^4; weak 2-helix; helix lines of e3 have curvature 1/2",
            normals={
                "radial": ("cos(u1)", "sin(u1)", "0", "0"),
                "binormal": ("-sin(u1)/sqrt(2)", "cos(u1)/sqrt(2)", "-1/sqrt(2)", "0"),
            },
        ),
        CatalogEntry(
            name="circle-cylinder-4d",
            immersion=_immersion(
                "circle-cylinder-4d", 2, ["cos(u1)", "sin(u1)", "u2", "0"], [_ANGLE, (-1.0, 1.0)]
            ),
            helix_directions=(
                KnownDirection((0.0, 0.0, 1.0, 0.0), 0.0),
                KnownDirection((0.0, 0.0, _S2, _S2), pi / 4),
            ),
            second_normal_dim=1,
            full=False,
            notes="circle times a line inside the hyperplane x4=0; second normal space is span{e4}",
            normals={"outward": ("cos(u1)", "sin(u1)", "0", "0"), "e4": ("0", "0", "0", "1")},
            curve_demo=CurveDemo(field=("1", "0"), normal="outward", seed=(0.0, 0.0)),
        ),
        CatalogEntry(
            name="sphere",
            immersion=_immersion(
                "sphere", 2,
                ["sin(u2)*cos(u1)", "sin(u2)*sin(u1)", "cos(u2)"],
                [_ANGLE, (0.2, pi - 0.2)],
            ),
            helix_directions=(),
            second_normal_dim=0,
            full=True,
            notes="unit sphere without the poles; no helix direction",
            normals={"outward": ("sin(u2)*cos(u1)", "sin(u2)*sin(u1)", "cos(u2)")},
        ),
    ]
    return {e.name: e for e in items}


def get(name: str) -> Result[CatalogEntry, DomainError]:
    """이름으로 항목을 찾습니다.

    Examples:
        >>> round(get("cone").value.helix_directions[0].theta, 10)
        0.7853981634
        >>> get("nonesuch").error.code
        'unknown_manifold'
    """
    return Result.from_optional(_registry().get(name), unknown_manifold_err(name))


def names() -> list[str]:
    return list(_registry())


def entries() -> list[CatalogEntry]:
    return list(_registry().values())
