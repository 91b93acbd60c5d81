"""로깅 설정.

모든 모듈은 ``logging.getLogger(__name__)``로 자기 로거를 가지며, 진입점(CLI)이
`configure_logging()`을 한 번 호출합니다. 로그는 stderr로만 나가므로 stdout의
JSON 리포트/CSV 스트림을 오염시키지 않습니다.
"""

from __future__ import annotations

import logging
import sys
from typing import Final

__all__ = ["LOG_FORMAT", "configure_logging", "verbosity_to_level"]

LOG_FORMAT: Final[str] = "%(asctime)s %(levelname)s %(name)s: %(message)s"
_DATE_FORMAT: Final[str] = "%Y-%m-%dT%H:%M:%S"

_ROOT_PACKAGES: Final[tuple[str, ...]] = ("app", "contexts", "shared")


def verbosity_to_level(verbose: int) -> int:
    """``-v`` 반복 횟수를 로그 레벨로 바꿉니다. (0→WARNING, 1→INFO, 2+→DEBUG)"""
    if verbose <= 0:
        return logging.WARNING
    if verbose == 1:
        return logging.INFO
    return logging.DEBUG


def configure_logging(level: int | str = logging.WARNING) -> None:
    """패키지 로거들에 stderr 핸들러를 붙입니다. 여러 번 불러도 핸들러는 하나입니다.

    Args:
        level: ``logging.INFO`` 같은 정수 또는 ``"DEBUG"`` 같은 이름.
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=_DATE_FORMAT))
    handler.set_name("helixlab")

    for name in _ROOT_PACKAGES:
        logger = logging.getLogger(name)
        logger.setLevel(level)
        for old in [h for h in logger.handlers if h.get_name() == "helixlab"]:
            logger.removeHandler(old)
        logger.addHandler(handler)
        logger.propagate = False
