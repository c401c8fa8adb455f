"""Tests for the j0 rules and the empirical recursion constants."""

from __future__ import annotations

import math

import numpy as np
import pytest

from kstails.diagnostics.recursion import (
    compute_j0,
    compute_j0_kp,
    tail_recursion_margin,
    tail_recursion_margin_kp,
)
from kstails.diagnostics.tails import TailProfile
from kstails.errors import ContractViolation, InsufficientDataError


@pytest.mark.parametrize(
    "H, C, j0",
    [(0.0, 1.0, 0), (0.5, 1.0, 1), (1.0, 1.0, 2), (1.0, 2.0, 2), (1.0, 0.5, 2), (10.0, 1.0, 3)],
)
def test_compute_j0(H, C, j0):
    assert compute_j0(H, C) == j0
    assert 2 ** (5 * j0) > 100 * max(1, C * C) * H * H


@pytest.mark.parametrize("K, p, j0", [(1.0, math.inf, 3), (1.0, 4.0, 3), (0.5, math.inf, 2)])
def test_compute_j0_kp(K, p, j0):
    assert compute_j0_kp(K, p) == j0


def test_lp_rule_needs_p_above_two():
    with pytest.raises(ContractViolation):
        compute_j0_kp(1.0, 2.0)


@pytest.mark.parametrize("H", [math.inf, math.nan])
def test_j0_rule_rejects_a_non_finite_bound(H):
    with pytest.raises(ContractViolation):
        compute_j0(H)
    with pytest.raises(ContractViolation):
        compute_j0_kp(H, 4.0)


def _planted(C=0.7, H=2.0, P=1.0, A=0.01):
    # I_1' + 16 I_1 = C 2^{-1} H^2 P exactly
    steady = C * 0.5 * H * H * P / 16.0
    times = np.linspace(0.0, 0.01, 101)
    return [
        TailProfile(t=float(t), multiplier=1.0, L=1.0, entries=((0, P), (1, A * math.exp(-16 * t) + steady)))
        for t in times
    ]


def test_margin_recovers_a_planted_constant():
    margins = tail_recursion_margin(_planted(), H=2.0, j0=0)
    assert set(margins) == {1}
    assert margins[1] == pytest.approx(0.7, abs=1e-6)


def test_margin_skips_indices_at_or_below_j0():
    assert tail_recursion_margin(_planted(), H=2.0, j0=1) == {}


def test_lp_margin_uses_its_own_forcing():
    margins = tail_recursion_margin_kp(_planted(), K_p=1.5, p=4.0, j0=0)
    lhs = 0.7 * 0.5 * 4.0
    assert margins[1] == pytest.approx(lhs / (2.0**-1.5 * 2.25), rel=1e-6)


def test_margin_is_clamped_at_zero():
    times = np.linspace(0.0, 0.1, 11)
    history = [
        TailProfile(t=float(t), multiplier=1.0, L=1.0, entries=((0, 1.0), (1, math.exp(-32 * t))))
        for t in times
    ]
    assert tail_recursion_margin(history, H=1.0, j0=0) == {1: 0.0}


def test_margin_preconditions():
    history = _planted()
    with pytest.raises(InsufficientDataError):
        tail_recursion_margin(history[:2], H=1.0, j0=0)
    with pytest.raises(ContractViolation):
        tail_recursion_margin(history, H=0.0, j0=0)
    mixed = history[:3] + [TailProfile(t=1.0, multiplier=2.0, L=1.0, entries=((0, 1.0),))]
    with pytest.raises(ContractViolation):
        tail_recursion_margin(mixed, H=1.0, j0=0)
    with pytest.raises(ContractViolation):
        tail_recursion_margin_kp(history, K_p=1.0, p=2.0, j0=0)
