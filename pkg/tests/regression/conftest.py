"""Fixtures for acceptance runs: every test here integrates the equations."""

from __future__ import annotations

import pytest

from kstails.verify import VerifyOptions


def pytest_collection_modifyitems(items: list[pytest.Item]) -> None:
    for item in items:
        if "tests/regression/" in str(item.fspath):
            item.add_marker(pytest.mark.regression)


@pytest.fixture
def verify_options(tmp_path) -> VerifyOptions:
    return VerifyOptions(seed=0, workdir=tmp_path)
