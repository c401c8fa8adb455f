"""Littlewood-Paley band projections.

Band membership is ``lo < |k| <= hi`` with Euclidean ``|k|`` in index units, so
``P_{<=N} = project_band(u, -1, N)`` and ``P_{>M} = project_band(u, M, inf)``
are exact complements.
"""

from __future__ import annotations

import math
from typing import Iterator, Tuple

import numpy as np

from kstails.errors import ContractViolation
from kstails.spectral.field import SpectralField


def band_mask(u: SpectralField, lo: float, hi: float) -> np.ndarray:
    if not lo < hi:
        raise ContractViolation(f"band requires lo < hi, got ({lo!r}, {hi!r}]")
    k = u.grid.index_norm
    return (k > lo) & (k <= hi)


def project_band(u: SpectralField, lo: float, hi: float = math.inf) -> SpectralField:
    mask = band_mask(u, lo, hi)
    return u.with_coefficients(np.where(mask, u.coefficients, 0.0))


def project_mask(u: SpectralField, mask: np.ndarray) -> SpectralField:
    """``P_A`` for an arbitrary index set given as a boolean array on the grid."""
    if mask.shape != u.grid.shape:
        raise ContractViolation(f"mask shape {mask.shape} does not match {u.grid.shape}")
    return u.with_coefficients(np.where(mask, u.coefficients, 0.0))


def low_pass(u: SpectralField, n: float) -> SpectralField:
    return project_band(u, -1.0, n)


def high_pass(u: SpectralField, m: float) -> SpectralField:
    return project_band(u, m, math.inf)


def dyadic_bands(base: float, top: float) -> Iterator[Tuple[float, float]]:
    """Annuli ``(base 2^j, base 2^{j+1}]`` for ``j >= 0`` until ``top`` is covered."""
    if base <= 0:
        raise ContractViolation(f"dyadic base must be positive, got {base!r}")
    lo = float(base)
    while lo < top:
        yield lo, 2.0 * lo
        lo *= 2.0


def dyadic_partition(u: SpectralField, base: float) -> Tuple[SpectralField, ...]:
    """``P_{<=base} u`` followed by every dyadic annulus up to the grid corner."""
    top = float(np.max(u.grid.index_norm))
    pieces = [low_pass(u, base)]
    pieces.extend(project_band(u, lo, hi) for lo, hi in dyadic_bands(base, top))
    return tuple(pieces)
