"""Tests for SteppingConfig validation."""

from __future__ import annotations

import pytest

from kstails.errors import ContractViolation
from kstails.integrator.config import Scheme, SteppingConfig


def test_defaults():
    c = SteppingConfig()
    assert c.scheme is Scheme.ETDRK4
    assert c.steps_per_sample == 10
    assert c.total_steps == 4000


def test_scheme_is_coerced_from_its_name():
    assert SteppingConfig(scheme="IMEX-CN").scheme is Scheme.IMEX_CN
    with pytest.raises(ContractViolation, match="unknown scheme"):
        SteppingConfig(scheme="RK4")


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(dt=0.0),
        dict(dt=-0.1),
        dict(dt=float("nan")),
        dict(max_amplitude=0.0),
        dict(dt=1.0, sample_interval=0.5),
        dict(sample_interval=300.0),
        dict(dt=1e-12),
    ],
)
def test_invalid_settings(kwargs):
    with pytest.raises(ContractViolation):
        SteppingConfig(**kwargs)


def test_integer_values_become_floats():
    c = SteppingConfig(dt=1, sample_interval=2, t_end=10)
    assert isinstance(c.dt, float)
    assert c.steps_per_sample == 2
    assert c.total_steps == 10
