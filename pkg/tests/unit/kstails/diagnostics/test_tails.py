"""Tests for dyadic tail energies and the quadratic fit."""

from __future__ import annotations

import numpy as np
import pytest

from kstails.diagnostics.tails import (
    TailProfile,
    TailRecorder,
    default_noise_floor,
    dyadic_tail_profile,
    gevrey_fit,
    is_concave,
    second_differences,
    tail_energy,
)
from kstails.errors import ContractViolation, InsufficientDataError
from kstails.spectral.field import SpectralField
from kstails.spectral.grid import Grid
from kstails.testing import random_hermitian


def _quadratic_profile(a=-1.0, b=0.5, c=0.75, js=range(6), energy=1.0):
    return TailProfile(
        t=0.0,
        multiplier=1.0,
        L=1.0,
        entries=tuple((j, 2.0 ** (a + b * j - c * j * j)) for j in js),
        energy=energy,
    )


def test_tail_energy_counts_modes_strictly_above_the_threshold():
    grid = Grid(1, 1.0, 16)
    a = np.zeros(16, dtype=complex)
    a[3] = a[-3] = 1.0
    a[5] = a[-5] = 2.0
    u = SpectralField(grid, a)
    assert tail_energy(u, 2.0) == pytest.approx(10.0)
    assert tail_energy(u, 3.0) == pytest.approx(8.0)
    assert tail_energy(u, 5.0) == 0.0


def test_profile_matches_tail_energy_and_stops_at_nyquist(grid_1d, rng):
    u = random_hermitian(grid_1d, rng)
    profile = dyadic_tail_profile(u, 0.25, j_max=5, t=1.5)
    # M_j = 2 pi 2^j: 6.3, 12.6, 25.1; the next reaches past N/2 = 32
    assert profile.j.tolist() == [0, 1, 2]
    for j, e in profile.entries:
        assert e == pytest.approx(tail_energy(u, profile.threshold(j)), rel=1e-12)
    assert np.all(np.diff(profile.energies) <= 0)
    assert profile.t == 1.5
    assert profile.energy == pytest.approx(u.energy())


def test_profile_arguments_are_checked(grid_1d, rng):
    u = random_hermitian(grid_1d, rng)
    with pytest.raises(ContractViolation):
        dyadic_tail_profile(u, 0.25, j_max=-1)
    with pytest.raises(ContractViolation):
        dyadic_tail_profile(u, 0.0, j_max=2)


def test_profile_accessors():
    p = _quadratic_profile(js=[0, 2])
    assert p.threshold(3) == 8.0
    assert p.value(2) == pytest.approx(2.0 ** (-1 + 1 - 3))
    assert p.value(1) is None


def test_recorder_appends_profiles(grid_1d, rng):
    rec = TailRecorder(multiplier=0.25, j_max=3)
    u = random_hermitian(grid_1d, rng)
    rec(0.0, u)
    rec(1.0, u)
    assert [p.t for p in rec.profiles] == [0.0, 1.0]


def test_default_noise_floor_is_relative_to_the_energy():
    assert default_noise_floor(4.0) == pytest.approx(4e-24)
    assert default_noise_floor(-1.0) == 0.0


def test_gevrey_fit_recovers_a_planted_quadratic():
    fit = gevrey_fit(_quadratic_profile())
    assert fit.a == pytest.approx(-1.0, abs=1e-9)
    assert fit.b == pytest.approx(0.5, abs=1e-9)
    assert fit.c == pytest.approx(0.75, abs=1e-9)
    assert fit.residual < 1e-9
    assert fit.j_used == (0, 1, 2, 3, 4, 5)
    assert set(fit.as_dict()) == {"a", "b", "c", "residual", "j_used"}


def test_noise_floor_drops_small_tails():
    profile = _quadratic_profile()
    assert gevrey_fit(profile, noise_floor=1e-4).j_used == (0, 1, 2, 3, 4)
    with pytest.raises(InsufficientDataError):
        gevrey_fit(profile, noise_floor=0.2)
    with pytest.raises(ContractViolation):
        gevrey_fit(profile, noise_floor=-1.0)


def test_second_differences_of_a_quadratic():
    d2 = second_differences(_quadratic_profile())
    assert np.allclose(d2, -1.5)
    assert is_concave([_quadratic_profile()])
    assert not is_concave([_quadratic_profile(c=-0.5)])


def test_second_differences_need_consecutive_indices():
    profile = _quadratic_profile(js=[0, 1, 3, 4, 5])
    assert second_differences(profile).shape == (1,)
    assert second_differences(_quadratic_profile(js=[0, 1])).size == 0


def test_smooth_field_has_concave_tails():
    grid = Grid(1, 4.0, 256)
    u = random_hermitian(grid, np.random.default_rng(1), decay=0.3)
    profile = dyadic_tail_profile(u, 1.0, j_max=5)
    assert is_concave([profile])
    assert gevrey_fit(profile).c > 0
