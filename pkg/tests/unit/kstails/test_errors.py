"""Tests for the exception hierarchy and its messages."""

from __future__ import annotations

import pytest

from kstails.errors import (
    CheckpointFormatError,
    ConfigError,
    ContractViolation,
    DivergenceError,
    KstailsError,
    RunDirectoryError,
    SweepError,
)


def test_divergence_error_carries_its_time():
    exc = DivergenceError("state became non-finite", 0.1)
    assert exc.t == 0.1
    assert str(exc) == "state became non-finite (t=0.10000000000000001)"
    assert isinstance(exc, ArithmeticError)


def test_checkpoint_error_names_the_offset():
    exc = CheckpointFormatError("bad magic", 0)
    assert str(exc) == "bad magic at byte offset 0"
    assert exc.offset == 0


def test_sweep_error_names_the_member():
    assert str(SweepError("member diverged", L=2.0)) == "member diverged (member L=2)"
    assert SweepError("no members").L is None


@pytest.mark.parametrize("cls", [ContractViolation, ConfigError, RunDirectoryError])
def test_value_errors(cls):
    assert issubclass(cls, ValueError)
    assert issubclass(cls, KstailsError)


def test_run_directory_error_is_a_config_error():
    assert issubclass(RunDirectoryError, ConfigError)
