"""매니폴드 정의 파일(.mfd) 읽기.

형식(줄 단위 ``key: value``, ``#`` 이후는 주석)::

    schema: 1
    name: my-cone
    m: 2
    n: 3
    component: u2*cos(u1)
    component: u2*sin(u1)
    component: u2
    domain: -3.14159, 3.14159
    domain: 0.2, 3

``component``와 ``domain``은 순서대로 반복합니다. 모든 진단 메시지는
``line N:`` 으로 시작합니다.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Final

from shared.primitives.io import IO
from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import DomainError, io_failure_err, manifold_file_err
from contexts.helix.domain.expr import ExprNode, parse
from contexts.helix.domain.manifold import Immersion

__all__ = ["SCHEMA_VERSION", "parse_manifold_text", "load_manifold"]

_log = logging.getLogger(__name__)

SCHEMA_VERSION: Final[int] = 1
_SCALAR_KEYS: Final[frozenset[str]] = frozenset({"schema", "name", "m", "n"})


def _int_value(lineno: int, key: str, text: str) -> Result[int, DomainError]:
    try:
        return Ok(int(text))
    except ValueError:
        return Err(manifold_file_err(line=lineno, detail=f"'{key}' must be an integer (got '{text}')"))


def _interval(lineno: int, text: str) -> Result[tuple[float, float], DomainError]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        return Err(manifold_file_err(line=lineno, detail=f"domain needs 'lo, hi' (got '{text}')"))
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        return Err(manifold_file_err(line=lineno, detail=f"domain bounds must be numbers (got '{text}')"))
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        return Err(manifold_file_err(line=lineno, detail=f"domain needs finite lo < hi (got '{text}')"))
    return Ok((lo, hi))


def parse_manifold_text(text: str) -> Result[Immersion, DomainError]:
    """정의 파일 본문을 검증된 `Immersion`으로 바꿉니다.

    Examples:
        >>> doc = "schema: 1\\nname: line\\nm: 1\\nn: 2\\ncomponent: u1\\ncomponent: u1^2\\ndomain: -1, 1\\n"
        >>> parse_manifold_text(doc).value.n
        2
        >>> parse_manifold_text("schema: 1\\nname: x\\nm: two\\nn: 3\\n").error.message
        "line 3: 'm' must be an integer (got 'two')"
    """
    scalars: dict[str, tuple[int, str]] = {}
    components: list[tuple[int, str]] = []
    domains: list[tuple[int, str]] = []
    lines = text.splitlines()

    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, value = body.partition(":")
        key, value = key.strip(), value.strip()
        if not sep:
            return Err(manifold_file_err(line=lineno, detail=f"expected 'key: value' (got '{body}')"))
        if key in _SCALAR_KEYS:
            if key in scalars:
                return Err(manifold_file_err(line=lineno, detail=f"duplicate key '{key}'"))
            scalars[key] = (lineno, value)
        elif key == "component":
            components.append((lineno, value))
        elif key == "domain":
            domains.append((lineno, value))
        else:
            return Err(manifold_file_err(line=lineno, detail=f"unknown key '{key}'"))

    end = len(lines) + 1
    for key in ("schema", "name", "m", "n"):
        if key not in scalars:
            return Err(manifold_file_err(line=end, detail=f"missing key '{key}'"))

    schema_line, schema = scalars["schema"]
    if schema != str(SCHEMA_VERSION):
        return Err(manifold_file_err(line=schema_line, detail=f"unsupported schema '{schema}' (expected {SCHEMA_VERSION})"))
    m_line, m_text = scalars["m"]
    n_line, n_text = scalars["n"]
    m_r, n_r = _int_value(m_line, "m", m_text), _int_value(n_line, "n", n_text)
    if isinstance(m_r, Err):
        return Err(m_r.error)
    if isinstance(n_r, Err):
        return Err(n_r.error)
    m, n = m_r.value, n_r.value
    if m < 1:
        return Err(manifold_file_err(line=m_line, detail=f"'m' must be >= 1 (got {m})"))
    if n <= m:
        return Err(manifold_file_err(line=n_line, detail=f"'n' must exceed m={m} (got {n})"))
    if len(components) != n:
        at = components[n][0] if len(components) > n else end
        return Err(manifold_file_err(line=at, detail=f"expected {n} 'component' lines (got {len(components)})"))
    if len(domains) != m:
        at = domains[m][0] if len(domains) > m else end
        return Err(manifold_file_err(line=at, detail=f"expected {m} 'domain' lines (got {len(domains)})"))

    nodes: list[ExprNode] = []
    for lineno, expr_text in components:
        r = parse(expr_text, m)
        if isinstance(r, Err):
            return Err(manifold_file_err(line=lineno, detail=r.error.message))
        nodes.append(r.value)
    box = Result.collect(_interval(lineno, t) for lineno, t in domains)
    if isinstance(box, Err):
        return Err(box.error)

    name = scalars["name"][1] or "unnamed"
    return Immersion.from_nodes(name=name, m=m, components=nodes, domain=box.value).map_err(
        lambda e: manifold_file_err(line=end, detail=e.message)
    )


def load_manifold(path: Path) -> Result[Immersion, DomainError]:
    """파일을 읽어 파싱합니다. 읽기 실패는 ``io_failure``."""
    return (
        IO.read_text(path)
        .tap(lambda text: _log.debug("read %s (%d bytes)", path, len(text)))
        .attempt(OSError, UnicodeDecodeError)
        .run()
        .map_err(lambda exc: io_failure_err(f"cannot read {path}: {exc}"))
        .and_then(parse_manifold_text)
    )
