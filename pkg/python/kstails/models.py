"""Right-hand sides of the Kuramoto-Sivashinsky family.

Every model is written as ``a_k' = lambda(k) a_k + N_k(a)`` on the retained
index box. Variants:

- ``KS1D``: the differentiated equation ``u_t + u_xxxx + u_xx + u u_x = 0``.
- ``DestabilizedKS1D``: the same with an extra ``+eta u`` growth term.
- ``RegBurgers``: ``u_t = -A_s u - sum_j d_j(u^2)`` in one or two dimensions.
- ``KS2D``: ``phi_t + Delta^2 phi + Delta phi + |grad phi|^2 / 2 = 0``.

Quadratic products are evaluated on a zero-padded grid (3/2 rule), so the
truncated result carries no aliased energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from kstails.errors import ContractViolation
from kstails.spectral.field import SpectralField, analyze, synthesize
from kstails.spectral.grid import Grid, WaveNumber
from kstails.spectral.operators import partial_derivative


class Variant(str, Enum):
    KS1D = "KS1D"
    KS2D = "KS2D"
    REG_BURGERS = "RegBurgers"
    DESTABILIZED_KS1D = "DestabilizedKS1D"


_FIXED_DIMENSION = {
    Variant.KS1D: 1,
    Variant.DESTABILIZED_KS1D: 1,
    Variant.KS2D: 2,
}


@dataclass(frozen=True)
class ModelSpec:
    """Which evolution equation, with its parameters.

    ``d`` may be left unset; it then follows the variant (KS1D and the
    destabilized form are 1D, KS2D is 2D) or, for RegBurgers, the grid.
    """

    variant: Variant = Variant.KS1D
    s: float = 2.0
    eta: float = 0.0
    d: Optional[int] = None
    linear_only: bool = False

    def __post_init__(self) -> None:
        try:
            variant = Variant(self.variant)
        except ValueError as exc:
            names = ", ".join(v.value for v in Variant)
            raise ContractViolation(f"unknown model variant {self.variant!r} (expected one of {names})") from exc
        object.__setattr__(self, "variant", variant)

        fixed = _FIXED_DIMENSION.get(variant)
        if fixed is not None and self.d is not None and self.d != fixed:
            raise ContractViolation(f"{variant.value} is {fixed}-dimensional, got d={self.d}")
        if self.d is not None and self.d not in (1, 2):
            raise ContractViolation(f"model dimension must be 1 or 2, got {self.d!r}")

        if self.eta < 0:
            raise ContractViolation(f"eta must be >= 0, got {self.eta!r}")
        if self.eta != 0 and variant is not Variant.DESTABILIZED_KS1D:
            raise ContractViolation(f"eta is only used by DestabilizedKS1D, not {variant.value}")

        if variant is Variant.REG_BURGERS:
            # without an explicit d, accept s valid in some supported dimension
            dims = (self.d,) if self.d is not None else (1, 2)
            if not any(_burgers_order_ok(self.s, d) for d in dims):
                raise ContractViolation(
                    f"RegBurgers needs s in (1, 2] or s > 1 + d/2, got s={self.s!r}"
                )

    def dimension(self, grid: Optional[Grid] = None) -> int:
        fixed = _FIXED_DIMENSION.get(self.variant)
        if fixed is not None:
            return fixed
        if self.d is not None:
            return self.d
        if grid is None:
            raise ContractViolation("RegBurgers dimension is unresolved without a grid")
        return grid.d

    def check_grid(self, grid: Grid) -> None:
        d = self.dimension(grid)
        if grid.d != d:
            raise ContractViolation(f"{self.variant.value} needs a {d}D grid, got d={grid.d}")
        if self.variant is Variant.REG_BURGERS and not _burgers_order_ok(self.s, d):
            raise ContractViolation(
                f"RegBurgers in d={d} needs s in (1, 2] or s > {1 + d / 2}, got s={self.s!r}"
            )


def _burgers_order_ok(s: float, d: int) -> bool:
    return (1 < s <= 2) or s > 1 + d / 2


def _symbol(m: ModelSpec, xi_norm_sq: np.ndarray) -> np.ndarray:
    if m.variant is Variant.REG_BURGERS:
        return -np.power(np.sqrt(xi_norm_sq), m.s)
    lam = xi_norm_sq - xi_norm_sq * xi_norm_sq
    if m.variant is Variant.DESTABILIZED_KS1D:
        lam = lam + m.eta
    return lam


def linear_symbol(m: ModelSpec, g: Grid, k: WaveNumber) -> float:
    """Growth rate ``lambda`` of mode ``k`` under the linearized flow."""
    if not g.contains(k.index):
        raise ContractViolation(f"index {k.index} is not retained on {g}")
    xi_sq = k.xi_norm**2
    return float(_symbol(m, np.asarray(xi_sq)))


def linear_symbol_array(m: ModelSpec, g: Grid) -> np.ndarray:
    """``lambda(k)`` for every retained index, FFT layout."""
    m.check_grid(g)
    return _symbol(m, g.xi_norm_sq)


def padded_size(n: int) -> int:
    """Smallest even size ``>= 3n/2``; quadratic products of ``n``-mode data are unaliased there."""
    return 2 * math.ceil(3 * n / 4)


def _centered_window(n: int, m: int, d: int) -> Tuple[slice, ...]:
    lo = m // 2 - n // 2
    return tuple(slice(lo, lo + n) for _ in range(d))


def _zero_nyquist(a: np.ndarray, grid: Grid) -> np.ndarray:
    return np.where(grid.nyquist_mask, 0.0, a)


def _pad(a: np.ndarray, grid: Grid) -> np.ndarray:
    m = padded_size(grid.N)
    out = np.zeros((m,) * grid.d, dtype=np.complex128)
    out[_centered_window(grid.N, m, grid.d)] = np.fft.fftshift(_zero_nyquist(a, grid))
    return np.fft.ifftshift(out)


def _truncate(b: np.ndarray, grid: Grid) -> np.ndarray:
    m = b.shape[0]
    centered = np.fft.fftshift(b)[_centered_window(grid.N, m, grid.d)]
    return _zero_nyquist(np.fft.ifftshift(centered), grid)


def dealiased_square_sum(fields: Sequence[SpectralField]) -> SpectralField:
    """Coefficients of ``sum_i f_i^2``, exact on the retained box (Nyquist plane zeroed)."""
    grid = fields[0].grid
    total = None
    for f in fields:
        values = synthesize(_pad(f.coefficients, grid), grid.L).real
        total = values * values if total is None else total + values * values
    return SpectralField(grid, _truncate(analyze(total, grid.L), grid))


def nonlinear_term(m: ModelSpec, u: SpectralField) -> SpectralField:
    """Dealiased ``N(u)``: ``-d_x(u^2)/2``, ``-sum_j d_j(u^2)`` or ``-|grad phi|^2/2``."""
    m.check_grid(u.grid)
    u.require_hermitian()
    if m.linear_only:
        return SpectralField.zeros(u.grid)

    if m.variant is Variant.KS2D:
        gradient = [partial_derivative(u, axis) for axis in range(u.grid.d)]
        return -0.5 * dealiased_square_sum(gradient)

    square = dealiased_square_sum([u])
    div = SpectralField.zeros(u.grid)
    for axis in range(u.grid.d):
        div = div + partial_derivative(square, axis)
    if m.variant is Variant.REG_BURGERS:
        return -1.0 * div
    return -0.5 * div


def rhs(m: ModelSpec, u: SpectralField) -> SpectralField:
    lam = linear_symbol_array(m, u.grid)
    return u.with_coefficients(lam * u.coefficients) + nonlinear_term(m, u)
