"""Tests for seeded initial fields."""

from __future__ import annotations

import math

import numpy as np
import pytest

from kstails.errors import ConfigError
from kstails.experiments.checkpoint import save_checkpoint
from kstails.experiments.config import from_flat
from kstails.experiments.initial_data import (
    make_initial_field,
    odd_random,
    random_band,
    single_mode,
)
from kstails.spectral.field import inverse_transform
from kstails.spectral.grid import Grid


def test_random_band_support_mean_and_rms():
    grid = Grid(1, 10.0, 64)
    u = random_band(grid, seed=4, top_index=10, amplitude=0.3)
    support = np.abs(u.coefficients) > 0
    assert not support[grid.index_norm > 10].any()
    assert u.coefficients[0] == 0
    assert u.l2_norm() / math.sqrt(grid.volume) == pytest.approx(0.3)
    u.require_hermitian(tolerance=0.0)


def test_random_band_is_independent_of_resolution():
    a = random_band(Grid(2, 3.0, 32), seed=9, top_index=5, amplitude=1.0)
    b = random_band(Grid(2, 3.0, 64), seed=9, top_index=5, amplitude=1.0)
    for k in [(1, 0), (2, -3), (-5, 0), (0, 4)]:
        assert b[k] == pytest.approx(a[k], rel=1e-13)
    c = random_band(Grid(2, 3.0, 32), seed=10, top_index=5, amplitude=1.0)
    assert c[1, 0] != a[1, 0]


@pytest.mark.parametrize("top", [0, 16, 20])
def test_random_band_top_index_must_fit(top):
    with pytest.raises(ConfigError):
        random_band(Grid(1, 1.0, 32), seed=0, top_index=top, amplitude=1.0)


def test_odd_random_is_odd():
    grid = Grid(1, 2.0, 64)
    u = odd_random(grid, seed=1, top_index=12, amplitude=0.5)
    assert np.all(u.coefficients.real == 0)
    f = inverse_transform(u).samples
    # x_j and x_{N-j} are mirror images; x_0 = -L sits on the symmetry point
    assert np.allclose(f[1:], -f[1:][::-1], atol=1e-14)
    assert abs(f[0]) < 1e-14
    assert u.l2_norm() / math.sqrt(grid.volume) == pytest.approx(0.5)


def test_single_mode_is_a_cosine():
    grid = Grid(2, 1.5, 16)
    u = single_mode(grid, (2, -1), amplitude=0.4)
    x, y = grid.points()
    expected = 0.4 * np.cos(math.pi * (2 * x - y) / 1.5)
    assert np.max(np.abs(inverse_transform(u).samples - expected)) < 1e-14
    mean = single_mode(grid, (0, 0), amplitude=2.0)
    assert np.allclose(inverse_transform(mean).samples, 2.0)
    with pytest.raises(ConfigError):
        single_mode(grid, (-8, 0), amplitude=1.0)


def test_initial_field_from_config(small_flat):
    cfg = from_flat(small_flat)
    u, t0 = make_initial_field(cfg)
    assert t0 == 0.0
    assert u.grid == cfg.grid
    assert u.l2_norm() / math.sqrt(cfg.grid.volume) == pytest.approx(0.1)


def test_initial_field_from_checkpoint(small_flat, tmp_path):
    cfg = from_flat(small_flat)
    u, _ = make_initial_field(cfg)
    path = save_checkpoint(u, 3.5, tmp_path / "state.ckpt")
    restart = from_flat({**small_flat, "initial_data.kind": "from_checkpoint", "initial_data.path": str(path)})
    v, t0 = make_initial_field(restart)
    assert t0 == 3.5
    assert np.array_equal(v.coefficients, u.coefficients)
    elsewhere = from_flat({**small_flat, "grid.N": 64, "initial_data.kind": "from_checkpoint", "initial_data.path": str(path)})
    with pytest.raises(ConfigError, match="holds"):
        make_initial_field(elsewhere)
