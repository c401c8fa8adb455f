"""Real periodic fields in spectral and collocation form, and the transforms.

Normalization is unitary:

    a_k = (2L)^{-d/2} \\int f(x) e^{-i pi k.x/L} dx,
    f(x) = (2L)^{-d/2} \\sum_k a_k e^{i pi k.x/L},

with the integral evaluated by the uniform rule on ``x_j = -L + j 2L/N``, so
Plancherel holds exactly up to roundoff.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.fft

from kstails.errors import ContractViolation, InvalidFieldError
from kstails.spectral.grid import Grid, axis_indices

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-10
IMAGINARY_TOLERANCE = 1e-12


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def mirror(a: np.ndarray) -> np.ndarray:
    """Return ``b`` with ``b[k] = a[-k mod N]`` along every axis."""
    axes = tuple(range(a.ndim))
    return np.roll(np.flip(a, axis=axes), 1, axis=axes)


def hermitian_part(a: np.ndarray) -> np.ndarray:
    """Exactly Hermitian projection ``(a_k + conj(a_{-k})) / 2``.

    Both members of a pair are formed from the same two numbers, so the result
    satisfies ``b[-k] == conj(b[k])`` bit-for-bit.
    """
    return 0.5 * (a + np.conj(mirror(a)))


def hermitian_defect(a: np.ndarray) -> float:
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(a - np.conj(mirror(a))))) / scale


@functools.lru_cache(maxsize=32)
def _parity(shape: Tuple[int, ...]) -> np.ndarray:
    # (-1)^{sum k}: the phase from sampling at x_j = -L + j h instead of 0
    total = sum(np.meshgrid(*[axis_indices(n) for n in shape], indexing="ij"))
    return _frozen(np.where(total % 2 == 0, 1.0, -1.0))


def analyze(samples: np.ndarray, L: float) -> np.ndarray:
    """Unitary coefficients of real samples on an ``n^d`` box of half-length ``L``."""
    d = samples.ndim
    npts = samples.size
    raw = scipy.fft.fftn(samples)
    return hermitian_part(raw * _parity(samples.shape)) * ((2.0 * L) ** (d / 2) / npts)


def synthesize(coeffs: np.ndarray, L: float) -> np.ndarray:
    """Complex samples of a coefficient array; callers decide what to do with ``imag``."""
    d = coeffs.ndim
    npts = coeffs.size
    return scipy.fft.ifftn(coeffs * _parity(coeffs.shape)) * (npts / (2.0 * L) ** (d / 2))


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Unitary Fourier coefficients of a real field, FFT layout."""

    grid: Grid
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.coefficients, dtype=np.complex128, copy=True)
        if arr.shape != self.grid.shape:
            raise ContractViolation(
                f"coefficient shape {arr.shape} does not match grid shape {self.grid.shape}"
            )
        object.__setattr__(self, "coefficients", _frozen(arr))

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralField":
        return cls(grid, np.zeros(grid.shape, dtype=np.complex128))

    def with_coefficients(self, coefficients: np.ndarray) -> "SpectralField":
        return SpectralField(self.grid, coefficients)

    def __getitem__(self, k) -> complex:
        if isinstance(k, (int, np.integer)):
            k = (k,)
        if not self.grid.contains(k):
            raise ContractViolation(f"index {tuple(k)} is not retained on {self.grid}")
        return complex(self.coefficients[tuple(int(ki) for ki in k)])

    def _check_same_grid(self, other: "SpectralField") -> None:
        if other.grid != self.grid:
            raise ContractViolation(f"grid mismatch: {self.grid} vs {other.grid}")

    def __add__(self, other: "SpectralField") -> "SpectralField":
        self._check_same_grid(other)
        return self.with_coefficients(self.coefficients + other.coefficients)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        self._check_same_grid(other)
        return self.with_coefficients(self.coefficients - other.coefficients)

    def __mul__(self, scalar: float) -> "SpectralField":
        return self.with_coefficients(self.coefficients * float(scalar))

    __rmul__ = __mul__

    def l2_norm(self) -> float:
        """``||{a_k}||_{l^2}``, equal to ``||f||_{L^2}`` by Plancherel."""
        return float(np.sqrt(np.sum(np.abs(self.coefficients) ** 2)))

    def energy(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))

    def symmetry_defect(self) -> float:
        return hermitian_defect(self.coefficients)

    def require_hermitian(self, tolerance: float = SYMMETRY_TOLERANCE) -> None:
        defect = self.symmetry_defect()
        if defect > tolerance:
            raise InvalidFieldError(
                f"Hermitian symmetry violated: relative defect {defect:.3e} > {tolerance:.1e}"
            )


@dataclass(frozen=True, eq=False)
class PhysicalField:
    """Real samples on the uniform grid, row-major."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.samples, dtype=np.float64, copy=True)
        if arr.size != self.grid.N**self.grid.d:
            raise ContractViolation(
                f"{arr.size} samples do not match a {self.grid.N}^{self.grid.d} grid"
            )
        object.__setattr__(self, "samples", _frozen(arr.reshape(self.grid.shape)))


def forward_transform(f: PhysicalField) -> SpectralField:
    return SpectralField(f.grid, analyze(f.samples, f.grid.L))


def inverse_transform(u: SpectralField) -> PhysicalField:
    u.require_hermitian()
    values = synthesize(u.coefficients, u.grid.L)
    scale = float(np.max(np.abs(values.real))) if values.size else 0.0
    residue = float(np.max(np.abs(values.imag))) if values.size else 0.0
    floor = max(scale, np.finfo(float).tiny)
    if residue > SYMMETRY_TOLERANCE * floor:
        logger.warning(
            "imaginary synthesis residue %.3e exceeds %.0e of the real scale %.3e; discarding it",
            residue, SYMMETRY_TOLERANCE, scale,
        )
    elif residue > IMAGINARY_TOLERANCE * floor:
        logger.debug(
            "discarding imaginary synthesis residue %.3e (scale %.3e)", residue, scale
        )
    return PhysicalField(u.grid, values.real)
