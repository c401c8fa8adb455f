"""Discrete Fourier analysis on ``[-L, L]^d`` with period ``2L``.

Public Interfaces:
- `Grid`, `WaveNumber`: the periodic box and its index/frequency tables.
- `SpectralField`, `PhysicalField`: the two representations of a real field.
- `forward_transform` / `inverse_transform`: unitary FFT pair.
- `project_band`, `low_pass`, `high_pass`, `dyadic_partition`: Littlewood-Paley.
- `apply_fractional_laplacian`, `partial_derivative`: Fourier multipliers.
- `sobolev_norm`, `sobolev_norm_dyadic`, `lp_norm`, `gradient_norm_sq`: norms.
- `triple_product_integral`, `inner_product`, `field_integral`: exact integrals.
- `bernstein_ratio`: the measured constant of the Bernstein inequality.
"""

from kstails.spectral.field import (
    PhysicalField,
    SpectralField,
    forward_transform,
    hermitian_part,
    inverse_transform,
)
from kstails.spectral.grid import Grid, WaveNumber
from kstails.spectral.operators import (
    apply_fractional_laplacian,
    bernstein_ratio,
    field_integral,
    gradient_norm_sq,
    inner_product,
    lp_norm,
    partial_derivative,
    sobolev_norm,
    sobolev_norm_dyadic,
    triple_product_integral,
)
from kstails.spectral.projection import (
    band_mask,
    dyadic_bands,
    dyadic_partition,
    high_pass,
    low_pass,
    project_band,
    project_mask,
)

__all__ = [
    "Grid",
    "WaveNumber",
    "SpectralField",
    "PhysicalField",
    "forward_transform",
    "inverse_transform",
    "hermitian_part",
    "project_band",
    "project_mask",
    "band_mask",
    "low_pass",
    "high_pass",
    "dyadic_bands",
    "dyadic_partition",
    "apply_fractional_laplacian",
    "partial_derivative",
    "sobolev_norm",
    "sobolev_norm_dyadic",
    "lp_norm",
    "gradient_norm_sq",
    "field_integral",
    "inner_product",
    "triple_product_integral",
    "bernstein_ratio",
]
