"""Every ``kstails verify`` suite, run end to end."""

from __future__ import annotations

import math

import numpy as np
import pytest

from kstails.experiments.config import from_flat
from kstails.experiments.runner import run_experiment
from kstails.verify import SUITE_ORDER, run_suite

FAST_SUITES = ("linear-exactness", "j0-rules", "reproducibility")

SLOW_SUITES = tuple(name for name in SUITE_ORDER if name not in FAST_SUITES)


def _assert_passed(result):
    failed = [(c.name, c.measured, c.required) for c in result.checks if not c.passed]
    assert result.passed, failed


@pytest.mark.parametrize("name", FAST_SUITES)
def test_fast_suite(name, verify_options):
    _assert_passed(run_suite(name, verify_options))


@pytest.mark.slow
@pytest.mark.parametrize("name", SLOW_SUITES)
def test_slow_suite(name, verify_options):
    _assert_passed(run_suite(name, verify_options))


def _symmetry_defects(kind, tmp_path):
    """Largest real part and mean mode relative to ``||u||`` at every sample."""
    cfg = from_flat(
        {
            "grid.L": 8 * math.pi,
            "grid.N": 128,
            "stepping.t_end": 100.0,
            "initial_data.kind": kind,
            "initial_data.amplitude": 0.5,
            "output": str(tmp_path / kind),
        }
    )
    even, mean = [], []

    def watch(t, u):
        norm = u.l2_norm()
        even.append(float(np.max(np.abs(u.coefficients.real))) / norm)
        mean.append(abs(u[0]) / norm)

    run_experiment(cfg, emit=False, observers=[watch])
    assert len(even) > 100
    return np.array(even), np.array(mean)


def test_odd_initial_data_stays_odd_at_every_sample(tmp_path):
    even, mean = _symmetry_defects("odd_random", tmp_path)
    assert np.max(even) <= 1e-10
    assert np.max(mean) <= 1e-10


def test_ks1d_mean_mode_stays_zero_at_every_sample(tmp_path):
    _, mean = _symmetry_defects("random_band", tmp_path)
    assert np.max(mean) <= 1e-10
