"""Direct sums for small grids; quadratic or worse in the mode count."""

from __future__ import annotations

import itertools
import math

import numpy as np

from kstails.spectral.field import SpectralField
from kstails.spectral.grid import Grid


def dft_coefficients(grid: Grid, samples: np.ndarray) -> np.ndarray:
    """Unitary coefficients by the uniform-rule sum, one mode at a time."""
    x = grid.points()
    weight = grid.spacing**grid.d / (2.0 * grid.L) ** (grid.d / 2)
    out = np.zeros(grid.shape, dtype=np.complex128)
    for k in itertools.product(range(-grid.nyquist, grid.nyquist), repeat=grid.d):
        phase = sum(ki * xi for ki, xi in zip(k, x)) * (math.pi / grid.L)
        out[k] = weight * np.sum(samples * np.exp(-1j * phase))
    return out


def triple_sum(f: SpectralField, g: SpectralField, h: SpectralField) -> float:
    """``(2L)^{-d/2} sum_{k+m+n=0} a_k b_m c_n`` over every retained pair ``(k, m)``."""
    grid = f.grid
    lo, hi = -grid.nyquist, grid.nyquist
    modes = list(itertools.product(range(lo, hi), repeat=grid.d))
    total = 0.0 + 0.0j
    for k in modes:
        ak = f.coefficients[k]
        if ak == 0:
            continue
        for m in modes:
            n = tuple(-(ki + mi) for ki, mi in zip(k, m))
            if all(lo <= ni < hi for ni in n):
                total += ak * g.coefficients[m] * h.coefficients[n]
    return float(total.real) / (2.0 * grid.L) ** (grid.d / 2)
