"""리포트 문서(JSON)와 곡선 CSV 직렬화.

문서는 키 정렬, 고정 들여쓰기, 시각 정보 없음으로 만들어서 같은 입력이면
바이트 단위로 같은 출력이 나옵니다. 유한하지 않은 실수는 문자열
``"inf"``/``"-inf"``/``"nan"`` 으로 씁니다.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Mapping
from typing import Any, Final

import numpy as np

from shared.primitives.maybe import Maybe
from contexts.helix.domain.curves import CurveOnManifold
from contexts.helix.domain.helix import HelixVerdict, WeakHelixResult
from contexts.helix.domain.theorems import TheoremReport

__all__ = [
    "SCHEMA_VERSION",
    "TOOL_NAME",
    "TOOL_VERSION",
    "document",
    "to_json",
    "helix_verdict_payload",
    "weak_helix_payload",
    "theorem_payload",
    "curve_csv",
]

SCHEMA_VERSION: Final[int] = 1
TOOL_NAME: Final[str] = "helixlab"
TOOL_VERSION: Final[str] = "0.1.0"


def _clean(obj: Any) -> Any:
    match obj:
        case bool() | None | str():
            return obj
        case int() | np.integer():
            return int(obj)
        case float() | np.floating():
            x = float(obj)
            if math.isnan(x):
                return "nan"
            if math.isinf(x):
                return "inf" if x > 0 else "-inf"
            return x
        case np.bool_():
            return bool(obj)
        case np.ndarray():
            return [_clean(v) for v in obj.tolist()]
        case Maybe():
            return _clean(obj.to_optional())
        case Mapping():
            return {str(k): _clean(v) for k, v in obj.items()}
        case list() | tuple():
            return [_clean(v) for v in obj]
    return str(obj)


def document(
    kind: str,
    *,
    instance: Mapping[str, Any],
    parameters: Mapping[str, Any],
    result: Mapping[str, Any],
) -> dict[str, Any]:
    """공통 머리(스키마/도구 버전)를 붙인 리포트 문서."""
    return _clean({
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "kind": kind,
        "instance": instance,
        "parameters": parameters,
        "result": result,
    })


def to_json(doc: Mapping[str, Any]) -> str:
    return json.dumps(_clean(doc), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def helix_verdict_payload(v: HelixVerdict) -> dict[str, Any]:
    return {
        "is_helix": v.is_helix,
        "theta_mean": v.theta_mean,
        "theta_spread": v.theta_spread,
        "theta_min": v.theta_min,
        "theta_max": v.theta_max,
        "grid_points": v.grid_size,
        "skipped_points": v.skipped,
        "tolerance": v.tolerance,
    }


def weak_helix_payload(r: WeakHelixResult) -> dict[str, Any]:
    return {
        "directions": [np.round(d, 12) + 0.0 for d in r.directions],
        "thetas": list(r.thetas),
        "independence_rank": r.independence_rank,
    }


def theorem_payload(report: TheoremReport) -> dict[str, Any]:
    return {
        "theorem_id": report.theorem_id,
        "title": report.title,
        "verdict": report.verdict.value,
        "hypotheses": report.hypotheses,
        "conclusions": report.conclusions,
        "observations": report.observations,
        "tolerance": report.tolerance,
        "samples": report.samples,
        "notes": list(report.notes),
    }


def curve_csv(c: CurveOnManifold, k: np.ndarray | None) -> str:
    """열 ``s, u1..um, p1..pn, T1..Tn, k``. 곡률이 없으면 k 칸은 비웁니다."""
    m, n = c.u.shape[1], c.p.shape[1]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["s"] + [f"u{i + 1}" for i in range(m)] + [f"p{i + 1}" for i in range(n)] + [f"T{i + 1}" for i in range(n)] + ["k"]
    )
    for i in range(len(c)):
        row = [c.s[i], *c.u[i], *c.p[i], *c.T[i]]
        cells = [repr(float(x)) for x in row]
        cells.append(repr(float(k[i])) if k is not None else "")
        writer.writerow(cells)
    return buf.getvalue()
