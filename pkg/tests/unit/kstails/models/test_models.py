"""Tests for model variants, linear symbols and dealiased nonlinear terms."""

from __future__ import annotations

import math

import numpy as np
import pytest

from kstails.errors import ContractViolation, InvalidFieldError
from kstails.models import (
    ModelSpec,
    Variant,
    linear_symbol,
    linear_symbol_array,
    nonlinear_term,
    padded_size,
    rhs,
)
from kstails.spectral.field import PhysicalField, SpectralField, forward_transform, inverse_transform
from kstails.spectral.grid import Grid
from kstails.spectral.operators import inner_product
from kstails.testing import random_hermitian


def _sampled(grid, fn):
    return forward_transform(PhysicalField(grid, fn(*grid.points())))


def test_variant_is_coerced_from_its_name():
    assert ModelSpec("RegBurgers", s=1.5).variant is Variant.REG_BURGERS
    with pytest.raises(ContractViolation, match="unknown model variant"):
        ModelSpec("KS3D")


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(variant="KS1D", d=2),
        dict(variant="KS2D", d=1),
        dict(variant="KS1D", eta=0.1),
        dict(variant="DestabilizedKS1D", eta=-1.0),
        dict(variant="RegBurgers", s=1.0),
        dict(variant="RegBurgers", s=0.5),
    ],
)
def test_invalid_models_are_rejected(kwargs):
    with pytest.raises(ContractViolation):
        ModelSpec(**kwargs)


def test_model_dimension_is_checked_against_the_grid():
    ModelSpec("RegBurgers", s=2.4).check_grid(Grid(2, 1.0, 16))
    with pytest.raises(ContractViolation):
        ModelSpec("RegBurgers", s=1.5, d=1).check_grid(Grid(2, 1.0, 16))
    with pytest.raises(ContractViolation):
        ModelSpec("KS2D").check_grid(Grid(1, 1.0, 16))


def test_dimension_follows_variant_or_grid():
    assert ModelSpec("KS2D").dimension() == 2
    assert ModelSpec("RegBurgers", s=2.0).dimension(Grid(2, 1.0, 8)) == 2
    with pytest.raises(ContractViolation):
        ModelSpec("RegBurgers", s=2.0).dimension()


def test_linear_symbols():
    grid = Grid(1, 4 * math.pi, 32)
    k = grid.wavenumber((2,))  # xi = 1/2
    assert linear_symbol(ModelSpec(), grid, k) == pytest.approx(0.25 - 0.0625)
    destab = ModelSpec("DestabilizedKS1D", eta=0.3)
    assert linear_symbol(destab, grid, k) == pytest.approx(0.1875 + 0.3)
    burgers = ModelSpec("RegBurgers", s=1.5)
    assert linear_symbol(burgers, grid, k) == pytest.approx(-(0.5**1.5))
    # the KS band edge |xi| = 1 is neutral
    edge = Grid(1, math.pi, 16).wavenumber((1,))
    assert linear_symbol(ModelSpec(), Grid(1, math.pi, 16), edge) == pytest.approx(0.0)


def test_symbol_array_matches_pointwise_symbols(grid_2d):
    m = ModelSpec("KS2D")
    lam = linear_symbol_array(m, grid_2d)
    for k in [(0, 0), (1, 2), (-3, 1), (-8, 5)]:
        assert lam[k] == pytest.approx(linear_symbol(m, grid_2d, grid_2d.wavenumber(k)))


@pytest.mark.parametrize("n, padded", [(8, 12), (10, 16), (64, 96), (512, 768)])
def test_padded_size(n, padded):
    assert padded_size(n) == padded


def test_ks1d_nonlinearity_of_a_cosine():
    grid = Grid(1, math.pi, 16)
    a = 0.7
    u = _sampled(grid, lambda x: a * np.cos(x))
    n = inverse_transform(nonlinear_term(ModelSpec(), u)).samples
    (x,) = grid.points()
    # -u u_x = a^2 sin(2x) / 2
    assert np.max(np.abs(n - 0.5 * a * a * np.sin(2 * x))) < 1e-13


def test_products_outside_the_box_are_truncated_not_aliased():
    grid = Grid(1, math.pi, 16)
    u = _sampled(grid, lambda x: np.cos(7 * x))
    n = nonlinear_term(ModelSpec(), u).coefficients
    # cos(7x)^2 has modes 0 and 14; 14 aliases onto -2 on an unpadded grid
    assert abs(n[2]) < 1e-13
    assert abs(n[-2]) < 1e-13


def test_ks2d_nonlinearity_is_half_the_gradient_square():
    grid = Grid(2, math.pi, 16)
    phi = _sampled(grid, lambda x, y: np.cos(x))
    n = inverse_transform(nonlinear_term(ModelSpec("KS2D"), phi)).samples
    x, _ = grid.points()
    assert np.max(np.abs(n - (-0.25 + 0.25 * np.cos(2 * x)))) < 1e-13


def test_regularized_burgers_2d_sums_both_derivatives():
    grid = Grid(2, math.pi, 16)
    u = _sampled(grid, lambda x, y: np.cos(x) + np.cos(y))
    n = inverse_transform(nonlinear_term(ModelSpec("RegBurgers", s=1.5), u)).samples
    x, y = grid.points()
    # -(d_x + d_y)(u^2) with u^2 = (cos x + cos y)^2
    u_val = np.cos(x) + np.cos(y)
    expected = 2 * u_val * (np.sin(x) + np.sin(y))
    assert np.max(np.abs(n - expected)) < 1e-12


def test_ks1d_nonlinearity_conserves_energy(grid_1d, rng):
    u = random_hermitian(grid_1d, rng, top=20)
    n = nonlinear_term(ModelSpec(), u)
    assert abs(inner_product(u, n)) < 1e-11 * u.l2_norm() ** 3


def test_linear_only_has_no_nonlinearity(grid_1d, rng):
    u = random_hermitian(grid_1d, rng)
    m = ModelSpec(linear_only=True)
    assert nonlinear_term(m, u).l2_norm() == 0.0
    lam = linear_symbol_array(m, grid_1d)
    assert np.array_equal(rhs(m, u).coefficients, lam * u.coefficients)


def test_mean_mode_stays_zero_for_ks1d(grid_1d, rng):
    u = random_hermitian(grid_1d, rng)
    assert nonlinear_term(ModelSpec(), u).coefficients[0] == 0


def test_non_real_field_is_rejected(grid_1d, rng):
    raw = rng.standard_normal(grid_1d.shape) + 1j * rng.standard_normal(grid_1d.shape)
    with pytest.raises(InvalidFieldError):
        nonlinear_term(ModelSpec(), SpectralField(grid_1d, raw))
