"""Tests for verify checks, the suite registry and the report table."""

from __future__ import annotations

import math

import pytest

from kstails.errors import ConfigError
from kstails.verify import (
    SUITE_ORDER,
    SUITES,
    Check,
    SuiteResult,
    VerifyOptions,
    format_table,
    run_suite,
    run_suites,
)


def test_check_constructors():
    assert Check.at_most("a", 1.0, 2.0).passed
    assert not Check.at_most("a", 3.0, 2.0).passed
    assert not Check.at_most("a", math.nan, 2.0).passed
    assert Check.at_least("b", 2.0, 2.0).passed
    assert Check.within("c", 0.5, 0.0, 1.0).required == "in [0, 1]"
    assert not Check.within("c", 1.5, 0.0, 1.0).passed
    held = Check.holds("d", True)
    assert held.measured == "yes" and held.passed
    assert Check.holds("d", False, measured=4.0).measured == 4.0
    failed = Check.failed("e", "boom")
    assert failed.measured == "boom" and not failed.passed


def test_empty_suite_does_not_pass():
    assert not SuiteResult("empty", (), 0.0).passed
    assert SuiteResult("one", (Check.holds("x", True),), 0.0).passed


def test_every_reported_suite_is_registered():
    assert set(SUITE_ORDER) == set(SUITES)
    assert len(SUITE_ORDER) == 10


def test_unknown_suite_is_a_config_error():
    with pytest.raises(ConfigError, match="unknown suite"):
        run_suite("nope")


def test_j0_rules_suite_passes():
    result = run_suite("j0-rules")
    assert result.passed, [c for c in result.checks if not c.passed]
    assert result.seconds >= 0


def test_workdir_keeps_artifacts(tmp_path):
    options = VerifyOptions(workdir=tmp_path)
    with options.directory("demo") as path:
        (path / "marker").write_text("x")
    assert (tmp_path / "demo" / "marker").is_file()
    with VerifyOptions().directory("demo") as tmp:
        assert tmp.is_dir()
    assert not tmp.exists()


def test_format_table():
    results = [
        SuiteResult("alpha", (Check.at_most("err", 1e-13, 1e-11), Check.at_least("order", math.inf, 3.8)), 0.5),
        SuiteResult("beta", (Check.failed("run", "DivergenceError"),), 1.0),
    ]
    lines = format_table(results).splitlines()
    assert lines[0].split() == ["suite", "check", "measured", "required", "status"]
    assert set(lines[1].replace(" ", "")) == {"-"}
    assert "1e-13" in lines[2] and lines[2].endswith("pass")
    assert "inf" in lines[3]
    assert lines[4].split() == ["alpha", "0.5s", "PASS"]
    assert lines[-1].split() == ["beta", "1.0s", "FAIL"]


def test_run_suites_keeps_the_requested_order():
    results = run_suites(["j0-rules"])
    assert [r.name for r in results] == ["j0-rules"]
