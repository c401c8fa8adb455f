"""Tests for config-driven runs and their run directories."""

from __future__ import annotations

import numpy as np
import pytest

from kstails.experiments.analysis import load_run_config
from kstails.experiments.config import from_flat, with_overrides
from kstails.experiments.runner import resolve_tail_multiplier, run_experiment

RUN_FILES = {"config.yaml", "norms.csv", "tails.csv", "fits.json", "run.json", "final.ckpt"}


def test_run_directory_layout(small_flat, tmp_path):
    cfg = from_flat(small_flat)
    record = run_experiment(cfg)
    out = tmp_path / "run"
    assert {p.name for p in out.iterdir()} == RUN_FILES
    assert load_run_config(out) == cfg
    assert record.config["grid.N"] == 32
    assert len(record.history) == 9


def test_runs_are_deterministic(small_flat):
    cfg = from_flat(small_flat)
    a = run_experiment(cfg, emit=False)
    b = run_experiment(cfg, emit=False)
    assert np.array_equal(a.history.l2, b.history.l2)
    assert np.array_equal(a.final.coefficients, b.final.coefficients)
    other = run_experiment(with_overrides(cfg, {"initial_data.seed": 1}), emit=False)
    assert not np.array_equal(a.final.coefficients, other.final.coefficients)


def test_checkpoints_are_named_by_step_and_restart_exactly(small_flat, tmp_path):
    cfg = from_flat({**small_flat, "checkpoint_every": 2})
    record = run_experiment(cfg)
    out = tmp_path / "run"
    names = sorted(p.name for p in out.glob("state_*.ckpt"))
    assert names == sorted(f"state_{n}.ckpt" for n in (0, 10, 20, 30, 40))

    restart = with_overrides(
        cfg,
        {
            "initial_data.kind": "from_checkpoint",
            "initial_data.path": str(out / "state_20.ckpt"),
            "stepping.t_end": 1.0,
            "checkpoint_every": 0,
            "output": str(tmp_path / "restart"),
        },
    )
    resumed = run_experiment(restart, emit=False)
    assert resumed.history.times[0] == pytest.approx(1.0)
    assert resumed.t_final == pytest.approx(2.0)
    assert np.array_equal(resumed.final.coefficients, record.final.coefficients)


def test_auto_multiplier_comes_from_a_pilot_run(small_flat):
    cfg = from_flat({**small_flat, "diagnostics.tail_multiplier": "auto", "diagnostics.C0": 0.5})
    pilot = run_experiment(with_overrides(cfg, {"diagnostics.tail_multiplier": 1.0}), emit=False)
    H = pilot.history.window(0.5).H
    assert resolve_tail_multiplier(cfg) == pytest.approx(0.5 * H**0.4)
    record = run_experiment(cfg, emit=False)
    assert record.tails[0].multiplier == pytest.approx(0.5 * H**0.4)


def test_extra_observers_see_every_sample(small_flat):
    seen = []
    run_experiment(from_flat(small_flat), emit=False, observers=[lambda t, u: seen.append(t)])
    assert len(seen) == 9
