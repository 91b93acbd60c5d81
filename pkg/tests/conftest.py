from __future__ import annotations

import enum
import sys

# Test-environment shim: the package targets Python >= 3.13 (enum.StrEnum is 3.11+).
# When the suite runs on an older interpreter, backport StrEnum before importing src.
if sys.version_info < (3, 11) and not hasattr(enum, "StrEnum"):

    class _StrEnum(str, enum.Enum):
        def __str__(self) -> str:
            return str(self.value)

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()

    enum.StrEnum = _StrEnum

import numpy as np
import pytest

from contexts.helix.domain import catalog
from contexts.helix.domain.manifold import Immersion
from contexts.helix.domain.theorems import VerificationParams


@pytest.fixture
def immersion_of():
    """카탈로그 이름 → Immersion."""

    def _get(name: str) -> Immersion:
        return catalog.get(name).value.immersion

    return _get


@pytest.fixture
def default_params() -> VerificationParams:
    return VerificationParams.create().value


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)
