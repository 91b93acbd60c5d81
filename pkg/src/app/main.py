"""helixlab 명령행.

Usage:
    helixlab list
    helixlab analyze cone --direction 0,0,1
    helixlab search helix-cylinder-4d
    helixlab trace cone --direction 0,0,1 --seed 0,1 --out cone.csv
    helixlab verify 3.8 cone --direction 0,0,1

종료 코드: 0 성공/확인, 1 부정 판정/보류, 2 입력 오류, 3 수치 실패,
4 가정 불충족, 5 위반.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Callable

import click

from shared.primitives.io import IO
from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import DomainError, io_failure_err
from shared.observability.log_config import configure_logging, verbosity_to_level
from contexts.helix.adapters.report import TOOL_NAME, TOOL_VERSION, to_json
from contexts.helix.application import services
from contexts.helix.application.services import Outcome, Subject
from contexts.helix.domain.theorems import VerificationParams
from app.wiring import DEFAULTS, ENV_PREFIX, parse_texts, parse_vector, resolve_manifold

__all__ = ["cli", "main"]

_log = logging.getLogger(__name__)


# ──────────────────────────────────────────────────────────────
# 출력 / 종료
# ──────────────────────────────────────────────────────────────
def _write(text: str, out: Path | None) -> Result[None, DomainError]:
    if out is None:
        click.echo(text, nl=False)
        return Ok(None)
    return (
        IO.write_text(out, text)
        .attempt(OSError)
        .run()
        .map(lambda _: None)
        .map_err(lambda exc: io_failure_err(f"cannot write {out}: {exc}"))
    )


def _fail(ctx: click.Context, error: DomainError) -> None:
    click.echo(f"error [{error.code}]: {error.message}", err=True)
    ctx.exit(services.exit_code_for(error))


def _finish(ctx: click.Context, result: Result[Outcome, DomainError], out: Path | None) -> None:
    match result:
        case Err(error=e):
            _fail(ctx, e)
        case Ok(value=outcome):
            _log.debug("%s finished with exit code %d", outcome.document.get("kind"), outcome.exit_code)
            written = _write(to_json(outcome.document), out)
            if isinstance(written, Err):
                _fail(ctx, written.error)
            ctx.exit(outcome.exit_code)


def _vector(ctx: click.Context, name: str, text: str | None) -> tuple[float, ...] | None:
    if text is None:
        return None
    match parse_vector(name, text):
        case Ok(value=v):
            return v
        case Err(error=e):
            _fail(ctx, e)
    return None


def _on_manifold(ref: str, run: Callable[[Subject], Result[Outcome, DomainError]]) -> Result[Outcome, DomainError]:
    return resolve_manifold(ref).and_then(run)


_OUT = click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="리포트를 쓸 파일 (기본: 표준출력)")
_GRID = click.option("--grid", type=click.IntRange(min=2), default=DEFAULTS.grid, show_default=True, help="축당 격자 점 수")
_TOL = click.option("--tol", type=click.FloatRange(min=0.0, min_open=True), default=DEFAULTS.tol, show_default=True, help="허용 오차")


# ──────────────────────────────────────────────────────────────
# 명령
# ──────────────────────────────────────────────────────────────
@click.group(context_settings={"auto_envvar_prefix": ENV_PREFIX})
@click.version_option(version=TOOL_VERSION, prog_name=TOOL_NAME)
@click.option("-v", "--verbose", count=True, help="로그를 더 자세히 (-v INFO, -vv DEBUG)")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="로그 레벨을 직접 지정 (-v 보다 우선)",
)
def cli(verbose: int, log_level: str | None) -> None:
    """부분다양체의 외재 기하와 약한 r-헬릭스 이론을 수치로 검증합니다.

    MANIFOLD 인자는 카탈로그 이름(``helixlab list``) 또는 ``.mfd`` 파일 경로입니다.
    """
    configure_logging(log_level or verbosity_to_level(verbose))


@cli.command("list")
@_OUT
@click.pass_context
def list_cmd(ctx: click.Context, out: Path | None) -> None:
    """내장 카탈로그의 매니폴드를 나열합니다."""
    _finish(ctx, Ok(services.list_catalog()), out)


@cli.command()
@click.argument("manifold")
@click.option("--direction", default=None, help="주변 공간 방향, 예: 0,0,1 (기본: 카탈로그의 첫 헬릭스 방향)")
@_GRID
@_TOL
@_OUT
@click.pass_context
def analyze(ctx: click.Context, manifold: str, direction: str | None, grid: int, tol: float, out: Path | None) -> None:
    """방향 d에 대한 헬릭스 여부와 각도 통계를 보고합니다. 헬릭스면 0, 아니면 1."""
    d = _vector(ctx, "direction", direction)
    _finish(ctx, _on_manifold(manifold, lambda s: services.analyze(s, d, grid=grid, tol=tol)), out)


@cli.command()
@click.argument("manifold")
@_GRID
@_TOL
@click.option("--starts", type=click.IntRange(min=0), default=DEFAULTS.starts, show_default=True, help="라운드당 추가 무작위 시작점 수")
@click.option("--rng-seed", type=click.IntRange(min=0), default=DEFAULTS.rng_seed, show_default=True)
@_OUT
@click.pass_context
def search(ctx: click.Context, manifold: str, grid: int, tol: float, starts: int, rng_seed: int, out: Path | None) -> None:
    """일차독립인 헬릭스 방향들을 찾습니다. r ≥ 1 이면 0, 아니면 1."""
    _finish(
        ctx,
        _on_manifold(manifold, lambda s: services.search(s, grid=grid, tol=tol, starts=starts, rng_seed=rng_seed)),
        out,
    )


@cli.command()
@click.argument("manifold")
@click.option("--direction", default=None, help="헬릭스 방향 (기본: 카탈로그의 첫 헬릭스 방향)")
@click.option("--seed", default=None, help="차트 시작점, 예: 0,1 (기본: 정의역 중심)")
@click.option("--s-max", type=click.FloatRange(min=0.0, min_open=True), default=DEFAULTS.s_max, show_default=True)
@click.option("--step", type=click.FloatRange(min=0.0, max=1.0, min_open=True), default=DEFAULTS.step, show_default=True)
@click.option("--k-floor", type=click.FloatRange(min=0.0, min_open=True), default=DEFAULTS.k_floor, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="곡선 CSV 파일 (기본: 표준출력)")
@click.option("--summary", type=click.Path(dir_okay=False, path_type=Path), default=None, help="요약 JSON 파일")
@click.pass_context
def trace(
    ctx: click.Context,
    manifold: str,
    direction: str | None,
    seed: str | None,
    s_max: float,
    step: float,
    k_floor: float,
    out: Path | None,
    summary: Path | None,
) -> None:
    """헬릭스 선을 적분해 CSV로 씁니다.

    요약 JSON은 ``--summary`` 파일로, 없으면 CSV가 파일로 갈 때만 표준출력으로 나갑니다.
    """
    d = _vector(ctx, "direction", direction)
    u0 = _vector(ctx, "seed", seed)

    def _run(s: Subject) -> Result[Outcome, DomainError]:
        start = u0 if u0 is not None else tuple((lo + hi) / 2.0 for lo, hi in s.immersion.domain)
        return services.trace(s, d, start, s_max=s_max, step=step, k_floor=k_floor)

    match _on_manifold(manifold, _run):
        case Err(error=e):
            _fail(ctx, e)
        case Ok(value=outcome):
            if (written := _write(outcome.csv_text or "", out)).is_err():
                _fail(ctx, written.error)
            if summary is not None or out is not None:
                if (written := _write(to_json(outcome.document), summary)).is_err():
                    _fail(ctx, written.error)
            ctx.exit(outcome.exit_code)


@cli.command()
@click.argument("theorem_id")
@click.argument("manifold")
@click.option("--direction", "directions", multiple=True, help="헬릭스 방향 (반복 가능)")
@click.option("--seed", default=None, help="곡선 시작점 (차트 좌표)")
@click.option("--curve-field", default=None, help="곡선용 접벡터장의 차트 성분, 예: '1,0'")
@click.option("--normal", default=None, help="주변 좌표로 준 법벡터장, 예: 'cos(u1),sin(u1),0'")
@_GRID
@click.option("--step", type=click.FloatRange(min=0.0, max=1.0, min_open=True), default=DEFAULTS.step, show_default=True)
@click.option("--s-max", type=click.FloatRange(min=0.0, min_open=True), default=DEFAULTS.s_max, show_default=True)
@_TOL
@click.option("--nonzero-floor", type=click.FloatRange(min=0.0, min_open=True), default=DEFAULTS.nonzero_floor, show_default=True)
@click.option("--rng-seed", type=click.IntRange(min=0), default=DEFAULTS.rng_seed, show_default=True)
@_OUT
@click.pass_context
def verify(
    ctx: click.Context,
    theorem_id: str,
    manifold: str,
    directions: tuple[str, ...],
    seed: str | None,
    curve_field: str | None,
    normal: str | None,
    grid: int,
    step: float,
    s_max: float,
    tol: float,
    nonzero_floor: float,
    rng_seed: int,
    out: Path | None,
) -> None:
    """정리를 수치로 검증합니다. confirmed 0, inconclusive 1, hypothesis-not-met 4, violated 5."""
    dirs = tuple(v for t in directions if (v := _vector(ctx, "direction", t)) is not None)
    u0 = _vector(ctx, "seed", seed)
    params = VerificationParams.create(
        tol=tol,
        nonzero_floor=nonzero_floor,
        grid=grid,
        step=step,
        s_max=s_max,
        seed=rng_seed,
        n_seeds=DEFAULTS.n_seeds,
        n_random_probes=DEFAULTS.n_random_probes,
        k_floor=DEFAULTS.k_floor,
    )
    result = params.and_then(lambda p: _on_manifold(manifold, lambda s: services.verify(
        s,
        theorem_id,
        p,
        directions=dirs,
        seed=u0,
        curve_field=parse_texts(curve_field) if curve_field is not None else None,
        normal=parse_texts(normal) if normal is not None else None,
    )))
    _finish(ctx, result, out)


def main() -> None:
    cli(prog_name=TOOL_NAME)


if __name__ == "__main__":
    sys.exit(main())
