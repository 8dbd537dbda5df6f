"""Shared test setup.

- src-first resolution: the package is imported straight from `src/` so the
  suite never tests a stale installed copy.
- The `slow` marker: acceptance-grid campaigns (seconds to a minute each);
  skip with -m 'not slow'.
- Field fixtures for the small fields the suite leans on: GF(5), GF(7),
  GF(8) (characteristic 2) and GF(9) (a proper extension).
"""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parents[1]
SRC = REPO / "src"
# unconditional: an existing (late) src entry must not let an installed copy win
sys.path.insert(0, str(SRC))

from carlitz_rank.field import construct_field  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: runs a full acceptance grid — skip with -m 'not slow'")


@pytest.fixture(autouse=True)
def _default_caps(monkeypatch):
    """Tests see the documented defaults, never a developer's overrides."""
    monkeypatch.delenv("CARLITZ_RANK_FIELD_CAP", raising=False)
    monkeypatch.delenv("CARLITZ_RANK_MAX_PAIRS", raising=False)


@pytest.fixture
def gf5():
    return construct_field(5)


@pytest.fixture
def gf7():
    return construct_field(7)


@pytest.fixture
def gf8():
    return construct_field(2, 3)


@pytest.fixture
def gf9():
    return construct_field(3, 2)
