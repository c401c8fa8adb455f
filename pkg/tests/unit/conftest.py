"""Fixtures for unit tests: seeded generators and small grids."""

from __future__ import annotations

import math

import numpy as np
import pytest

from kstails.spectral.grid import Grid


def pytest_collection_modifyitems(items: list[pytest.Item]) -> None:
    for item in items:
        if "tests/unit/" in str(item.fspath):
            item.add_marker(pytest.mark.unit)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def grid_1d() -> Grid:
    return Grid(d=1, L=8 * math.pi, N=64)


@pytest.fixture
def grid_2d() -> Grid:
    return Grid(d=2, L=2 * math.pi, N=16)


@pytest.fixture(autouse=True)
def _quiet_log_level(monkeypatch):
    monkeypatch.delenv("KSTAILS_LOG_LEVEL", raising=False)


@pytest.fixture
def small_flat(tmp_path) -> dict:
    """Flat overrides for a KS1D run that finishes in a fraction of a second."""
    return {
        "grid.L": "4pi",
        "grid.N": 32,
        "stepping.dt": 0.05,
        "stepping.t_end": 2.0,
        "stepping.sample_interval": 0.25,
        "initial_data.amplitude": 0.1,
        "diagnostics.p_list": [4.0],
        "diagnostics.s_list": [1.0],
        "diagnostics.tail_multiplier": 0.25,
        "diagnostics.j_max": 4,
        "diagnostics.fit_times": [1.0],
        "output": str(tmp_path / "run"),
    }
