"""Seeded initial fields.

Random data is drawn on the box ``[-T, T]^d`` of indices (``T`` the top index)
in a fixed order, so the same seed gives the same field on every grid that
retains that box; resolution studies rely on this.
"""

from __future__ import annotations

import logging
import math
from typing import Tuple

import numpy as np

from kstails.errors import ConfigError
from kstails.experiments.checkpoint import load_checkpoint
from kstails.experiments.config import ExperimentConfig, InitialKind
from kstails.spectral.field import SpectralField, hermitian_part
from kstails.spectral.grid import Grid

logger = logging.getLogger(__name__)


def _with_rms(grid: Grid, a: np.ndarray, amplitude: float) -> np.ndarray:
    """Scale so that ``||f||_{L^2} / sqrt(|box|) == amplitude``."""
    norm = float(np.sqrt(np.sum(np.abs(a) ** 2)))
    if norm == 0.0:
        return a
    return a * (amplitude * math.sqrt(grid.volume) / norm)


def random_band(grid: Grid, seed: int, top_index: int, amplitude: float) -> SpectralField:
    """Zero-mean Hermitian field on ``0 < |k| <= top_index`` with RMS ``amplitude``."""
    if not 1 <= top_index < grid.nyquist:
        raise ConfigError(f"top_index must satisfy 1 <= top_index < N/2 = {grid.nyquist}, got {top_index}")
    rng = np.random.default_rng(seed)
    width = 2 * top_index + 1
    box = rng.standard_normal((width,) * grid.d) + 1j * rng.standard_normal((width,) * grid.d)
    offsets = np.arange(-top_index, top_index + 1)
    # box position p holds index p - top_index; place it in FFT layout
    positions = np.ix_(*[offsets % grid.N] * grid.d)
    a = np.zeros(grid.shape, dtype=np.complex128)
    a[positions] = box
    a = np.where((grid.index_norm > 0) & (grid.index_norm <= top_index), a, 0.0)
    a = hermitian_part(a)
    return SpectralField(grid, _with_rms(grid, a, amplitude))


def odd_random(grid: Grid, seed: int, top_index: int, amplitude: float) -> SpectralField:
    """Odd part of :func:`random_band`: purely imaginary, ``a_{-k} = -a_k``."""
    a = random_band(grid, seed, top_index, 1.0).coefficients
    odd = 1j * a.imag
    return SpectralField(grid, _with_rms(grid, odd, amplitude))


def single_mode(grid: Grid, k: Tuple[int, ...], amplitude: float) -> SpectralField:
    """``amplitude * cos(pi k.x / L)``."""
    if not grid.contains(k) or any(abs(int(ki)) >= grid.nyquist for ki in k):
        raise ConfigError(f"mode {tuple(k)} is not a non-Nyquist index on {grid}")
    a = np.zeros(grid.shape, dtype=np.complex128)
    scale = (2.0 * grid.L) ** (grid.d / 2)
    pos = tuple(int(ki) for ki in k)
    neg = tuple(-int(ki) for ki in k)
    if pos == neg:
        a[pos] = scale * amplitude
    else:
        a[pos] = 0.5 * scale * amplitude
        a[neg] = 0.5 * scale * amplitude
    return SpectralField(grid, a)


def make_initial_field(cfg: ExperimentConfig) -> Tuple[SpectralField, float]:
    """Initial field and its start time (nonzero only for checkpoint restarts)."""
    init = cfg.initial_data
    grid = cfg.grid
    if init.kind is InitialKind.FROM_CHECKPOINT:
        u, t0 = load_checkpoint(init.path)
        if u.grid != grid:
            raise ConfigError(f"checkpoint {init.path} holds {u.grid}, config asks for {grid}")
        logger.info("restarting from %s at t=%g", init.path, t0)
        return u, t0
    if init.kind is InitialKind.SINGLE_MODE:
        return single_mode(grid, init.k, init.amplitude), 0.0
    top = cfg.resolved_top_index()
    if init.kind is InitialKind.ODD_RANDOM:
        return odd_random(grid, init.seed, top, init.amplitude), 0.0
    return random_band(grid, init.seed, top, init.amplitude), 0.0
