"""Tests for the ``kstails`` command line."""

from __future__ import annotations

import logging

import pytest

from kstails.cli.__main__ import (
    EXIT_CONFIG,
    EXIT_DIVERGED,
    EXIT_OK,
    _install_handler,
    build_parser,
    main,
)


def _set_flags(flat: dict) -> list:
    argv = []
    for key, value in flat.items():
        if key != "output":
            argv += ["--set", f"{key}={value}"]
    return argv + ["--out", flat["output"]]


def test_no_command_is_a_usage_error(capsys):
    assert main([]) == EXIT_CONFIG
    assert "usage" in capsys.readouterr().err


def test_missing_config_file(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "absent.yaml")]) == EXIT_CONFIG
    assert "config file not found" in capsys.readouterr().err


def test_unknown_override_key(capsys):
    assert main(["run", "--set", "grid.M=3"]) == EXIT_CONFIG
    assert "unknown config key" in capsys.readouterr().err


def test_run_then_analyze(small_flat, tmp_path, capsys):
    assert main(["run", *_set_flags(small_flat)]) == EXIT_OK
    out = tmp_path / "run"
    for name in ("config.yaml", "norms.csv", "tails.csv", "fits.json", "run.json", "final.ckpt"):
        assert (out / name).is_file()
    assert ", H=" in capsys.readouterr().out

    before = (out / "fits.json").read_bytes()
    assert main(["analyze", str(out)]) == EXIT_OK
    assert (out / "fits.json").read_bytes() == before


def test_run_from_a_yaml_file(small_flat, tmp_path):
    nested = tmp_path / "run.yaml"
    nested.write_text("grid:\n  N: 32\n  L: 4pi\nstepping:\n  t_end: 1.0\n", encoding="utf-8")
    argv = ["run", "--config", str(nested), "--set", "stepping.sample_interval=0.25",
            "--set", "diagnostics.j_max=4", "--seed", "3", "--out", small_flat["output"]]
    assert main(argv) == EXIT_OK
    config = (tmp_path / "run" / "config.yaml").read_text(encoding="utf-8")
    assert "initial_data.seed: 3" in config


def test_analyze_a_directory_without_a_run(tmp_path, capsys):
    assert main(["analyze", str(tmp_path)]) == EXIT_CONFIG
    assert "config.yaml" in capsys.readouterr().err


def test_diverging_run_exit_code(small_flat, capsys):
    flat = {
        **small_flat,
        "model.variant": "DestabilizedKS1D",
        "model.eta": 5.0,
        "model.linear_only": True,
        "stepping.max_amplitude": 10.0,
    }
    assert main(["run", *_set_flags(flat)]) == EXIT_DIVERGED
    assert "diverged at t*=" in capsys.readouterr().err


def test_verify_prints_the_table(capsys):
    assert main(["verify", "--suite", "j0-rules"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "j0-rules" in out
    assert "PASS" in out


def test_verify_rejects_unknown_suites():
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nope"])
    assert info.value.code == 2


def test_help_lists_config_defaults():
    text = build_parser().format_help()
    assert "grid.N" in text
    assert "512" in text
    assert "KSTAILS_LOG_LEVEL" in text


@pytest.mark.parametrize(
    "env, verbosity, level",
    [
        (None, 0, logging.WARNING),
        (None, 1, logging.INFO),
        (None, 2, logging.DEBUG),
        ("ERROR", 0, logging.ERROR),
        ("DEBUG", 1, logging.DEBUG),
        ("10", 0, logging.DEBUG),
    ],
)
def test_handler_level(monkeypatch, env, verbosity, level):
    if env is not None:
        monkeypatch.setenv("KSTAILS_LOG_LEVEL", env)
    _install_handler(verbosity)
    log = logging.getLogger("kstails")
    assert log.level == level
    assert log.handlers
    assert log.propagate is False
