"""Periodic box descriptor and its wavenumber tables.

The box is ``[-L, L]^d`` with period ``2L`` per axis. Modes are
``e^{i pi k.x / L}``, so the physical frequency of index ``k`` is
``xi_k = pi k / L``. Coefficient arrays use the FFT layout: along each axis
position ``p`` holds index ``p`` for ``p < N/2`` and ``p - N`` otherwise, so the
retained box is ``k_i in [-N/2, N/2)`` and ``a[k]`` works for negative ``k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple

import numpy as np

from kstails.errors import ContractViolation


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def axis_indices(n: int) -> np.ndarray:
    """Signed integer indices of an FFT-layout axis of length ``n``."""
    return np.fft.fftfreq(n, d=1.0 / n).round().astype(np.int64)


@dataclass(frozen=True)
class Grid:
    d: int
    L: float
    N: int

    def __post_init__(self) -> None:
        if self.d not in (1, 2):
            raise ContractViolation(f"dimension must be 1 or 2, got {self.d!r}")
        if not (isinstance(self.N, (int, np.integer)) and self.N >= 8 and self.N % 2 == 0):
            raise ContractViolation(f"modes_per_axis must be an even integer >= 8, got {self.N!r}")
        if not (math.isfinite(self.L) and self.L > 0):
            raise ContractViolation(f"half_length must be positive, got {self.L!r}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "L", float(self.L))

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.N,) * self.d

    @property
    def spacing(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def volume(self) -> float:
        return (2.0 * self.L) ** self.d

    @property
    def nyquist(self) -> int:
        return self.N // 2

    @cached_property
    def indices(self) -> Tuple[np.ndarray, ...]:
        """Per-axis signed index arrays broadcast to :attr:`shape`."""
        axes = [axis_indices(self.N)] * self.d
        return tuple(_readonly(a) for a in np.meshgrid(*axes, indexing="ij"))

    @cached_property
    def index_norm(self) -> np.ndarray:
        """Euclidean ``|k|`` of every retained index."""
        sq = sum(k.astype(np.float64) ** 2 for k in self.indices)
        return _readonly(np.sqrt(sq))

    @cached_property
    def xi(self) -> Tuple[np.ndarray, ...]:
        return tuple(_readonly(math.pi * k / self.L) for k in self.indices)

    @cached_property
    def xi_norm(self) -> np.ndarray:
        return _readonly(math.pi * self.index_norm / self.L)

    @cached_property
    def xi_norm_sq(self) -> np.ndarray:
        return _readonly(sum(x * x for x in self.xi))

    @cached_property
    def nyquist_mask(self) -> np.ndarray:
        """True where any axis sits on the unpaired index ``-N/2``."""
        mask = np.zeros(self.shape, dtype=bool)
        for k in self.indices:
            mask |= k == -self.nyquist
        return _readonly(mask)

    def points(self) -> Tuple[np.ndarray, ...]:
        """Sample coordinates broadcast to :attr:`shape`."""
        x = -self.L + self.spacing * np.arange(self.N)
        return tuple(np.meshgrid(*([x] * self.d), indexing="ij"))

    def wavenumber(self, k: Sequence[int]) -> "WaveNumber":
        return WaveNumber.on(self, k)

    def contains(self, k: Sequence[int]) -> bool:
        return len(k) == self.d and all(-self.nyquist <= int(ki) < self.nyquist for ki in k)


@dataclass(frozen=True)
class WaveNumber:
    index: Tuple[int, ...]
    L: float

    @classmethod
    def on(cls, grid: Grid, k: Sequence[int]) -> "WaveNumber":
        k = tuple(int(ki) for ki in k)
        if not grid.contains(k):
            raise ContractViolation(f"index {k} is not retained on {grid}")
        return cls(index=k, L=grid.L)

    @property
    def xi(self) -> Tuple[float, ...]:
        return tuple(math.pi * ki / self.L for ki in self.index)

    @property
    def norm(self) -> float:
        return math.sqrt(sum(ki * ki for ki in self.index))

    @property
    def xi_norm(self) -> float:
        return math.pi * self.norm / self.L
