"""Fourier multipliers, norms and the exact integral identities.

Every frequency weight uses ``xi_k = pi k / L``; see :mod:`kstails.spectral.grid`.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np
from scipy.signal import fftconvolve

from kstails.errors import ContractViolation
from kstails.spectral.field import PhysicalField, SpectralField, inverse_transform
from kstails.spectral.projection import dyadic_partition, low_pass


def apply_fractional_laplacian(u: SpectralField, s: float) -> SpectralField:
    """``A_s = (-Delta)^{s/2}``: multiply ``a_k`` by ``|xi_k|^s``.

    The mean mode is annihilated for ``s > 0`` and kept for ``s == 0``.
    """
    if s < 0:
        raise ContractViolation(f"fractional order must be >= 0, got {s!r}")
    return u.with_coefficients(u.coefficients * np.power(u.grid.xi_norm, s))


def partial_derivative(u: SpectralField, axis: int) -> SpectralField:
    """``d/dx_axis``; the unpaired Nyquist plane of that axis is dropped."""
    grid = u.grid
    if not 0 <= axis < grid.d:
        raise ContractViolation(f"axis {axis} out of range for d={grid.d}")
    multiplier = 1j * np.where(grid.indices[axis] == -grid.nyquist, 0.0, grid.xi[axis])
    return u.with_coefficients(u.coefficients * multiplier)


def gradient_norm_sq(u: SpectralField) -> float:
    """``||grad f||_{L^2}^2 = sum |xi_k|^2 |a_k|^2``."""
    return float(np.sum(u.grid.xi_norm_sq * np.abs(u.coefficients) ** 2))


def field_integral(u: SpectralField) -> float:
    """``\\int f dx = (2L)^{d/2} a_0``."""
    zero = (0,) * u.grid.d
    return float((2.0 * u.grid.L) ** (u.grid.d / 2) * u.coefficients[zero].real)


def inner_product(u: SpectralField, v: SpectralField) -> float:
    """``\\int f g dx`` for real fields, by Plancherel."""
    if u.grid != v.grid:
        raise ContractViolation(f"grid mismatch: {u.grid} vs {v.grid}")
    return float(np.real(np.vdot(u.coefficients, v.coefficients)))


def _sobolev_weight(u: SpectralField, s: float, homogeneous: bool) -> np.ndarray:
    if s < 0:
        raise ContractViolation(f"Sobolev order must be >= 0, got {s!r}")
    if s == 0:
        # H^0 and its homogeneous form are both L^2
        return np.ones(u.grid.shape)
    w = np.power(u.grid.xi_norm, 2.0 * s)
    return w if homogeneous else 1.0 + w


def sobolev_norm(u: SpectralField, s: float, homogeneous: bool = False) -> float:
    """``(sum |a_k|^2 (1 + |xi_k|^{2s}))^{1/2}``, or the homogeneous ``|xi_k|^{2s}`` form."""
    w = _sobolev_weight(u, s, homogeneous)
    return float(np.sqrt(np.sum(w * np.abs(u.coefficients) ** 2)))


def sobolev_norm_dyadic(
    u: SpectralField, s: float, base: Optional[float] = None, homogeneous: bool = False
) -> float:
    """Same terms as :func:`sobolev_norm`, summed block by block over dyadic annuli."""
    w = _sobolev_weight(u, s, homogeneous)
    base = u.grid.L if base is None else base
    total = 0.0
    for piece in dyadic_partition(u, base):
        total += float(np.sum(w * np.abs(piece.coefficients) ** 2))
    return math.sqrt(total)


def lp_norm(f: PhysicalField, p: float) -> float:
    """Uniform-rule ``L^p`` norm; ``p = inf`` is the sample maximum."""
    if not p >= 1:
        raise ContractViolation(f"L^p exponent must be >= 1, got {p!r}")
    values = np.abs(f.samples)
    if math.isinf(p):
        return float(np.max(values))
    weight = f.grid.spacing**f.grid.d
    if p == 2:
        return float(np.sqrt(weight * np.sum(values * values)))
    peak = float(np.max(values))
    if peak == 0.0:
        return 0.0
    # scale by the peak so large p cannot overflow
    return peak * float((weight * np.sum((values / peak) ** p)) ** (1.0 / p))


def triple_product_integral(f: SpectralField, g: SpectralField, h: SpectralField) -> float:
    """``\\int f g h dx = (2L)^{-d/2} sum_{k+m+n=0} a_k b_m c_n``, exactly.

    The index-sum constraint is evaluated as a linear (non-periodic) convolution
    of the centered coefficient boxes, so no triple is aliased.
    """
    grid = f.grid
    if g.grid != grid or h.grid != grid:
        raise ContractViolation("triple product requires identical grids")
    n = grid.N
    a = np.fft.fftshift(f.coefficients)
    b = np.fft.fftshift(g.coefficients)
    c = np.fft.fftshift(h.coefficients)
    # centered position p holds index p - N/2; conv position q holds k+m = q - N
    conv = fftconvolve(a, b, mode="full")
    window = tuple(slice(n // 2 + 1, 3 * n // 2 + 1) for _ in range(grid.d))
    paired = np.flip(conv[window])
    total = np.sum(c * paired)
    return float(total.real) / (2.0 * grid.L) ** (grid.d / 2)


def bernstein_ratio(u: SpectralField, n_b: float, p: float, q: float) -> float:
    """``||P_{<=N_b} f||_q / ((N_b/L)^{d(1/p-1/q)} ||f||_p)`` for ``1 <= p <= 2 <= q``."""
    if not (1 <= p <= 2 <= q):
        raise ContractViolation(f"Bernstein exponents need 1 <= p <= 2 <= q, got p={p}, q={q}")
    grid = u.grid
    inv_q = 0.0 if math.isinf(q) else 1.0 / q
    denom = (n_b / grid.L) ** (grid.d * (1.0 / p - inv_q)) * lp_norm(inverse_transform(u), p)
    if denom == 0.0:
        return 0.0
    return lp_norm(inverse_transform(low_pass(u, n_b)), q) / denom
