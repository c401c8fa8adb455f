"""Sampled norm time series.

A :class:`NormRecorder` is an integrator observer; every call appends one
:class:`NormSample` and advances the trapezoidal accumulation of
``\\int_0^t ||grad phi||^2 ds``. For the one-dimensional variants the field is
``u`` itself and ``mean_minus_phi`` is simply ``-\\int u dx``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from kstails.errors import ContractViolation
from kstails.models import Variant
from kstails.spectral.field import SpectralField, inverse_transform
from kstails.spectral.grid import Grid
from kstails.spectral.operators import (
    field_integral,
    gradient_norm_sq,
    lp_norm,
    sobolev_norm,
)


def order_label(value: float) -> str:
    """Column suffix for an exponent: ``4`` -> ``"4"``, ``1.5`` -> ``"1.5"``, ``inf`` -> ``"inf"``."""
    value = float(value)
    if math.isinf(value):
        return "inf"
    if value.is_integer():
        return str(int(value))
    return repr(value)


@dataclass(frozen=True)
class NormSample:
    t: float
    l2: float
    lp: Mapping[float, float]
    hs: Mapping[float, float]
    mean_minus_phi: float
    grad_sq: float
    grad_sq_integral: float


@dataclass(frozen=True)
class NormHistory:
    samples: Tuple[NormSample, ...] = ()
    p_list: Tuple[float, ...] = ()
    s_list: Tuple[float, ...] = ()
    variant: Optional[Variant] = None
    diverged_at: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", tuple(self.samples))
        object.__setattr__(self, "p_list", tuple(float(p) for p in self.p_list))
        object.__setattr__(self, "s_list", tuple(float(s) for s in self.s_list))
        times = [s.t for s in self.samples]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ContractViolation("norm history times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples], dtype=np.float64)

    @property
    def l2(self) -> np.ndarray:
        return np.array([s.l2 for s in self.samples], dtype=np.float64)

    @property
    def mean_minus_phi(self) -> np.ndarray:
        return np.array([s.mean_minus_phi for s in self.samples], dtype=np.float64)

    @property
    def grad_sq(self) -> np.ndarray:
        return np.array([s.grad_sq for s in self.samples], dtype=np.float64)

    @property
    def grad_sq_integral(self) -> np.ndarray:
        return np.array([s.grad_sq_integral for s in self.samples], dtype=np.float64)

    def lp(self, p: float) -> np.ndarray:
        if float(p) not in self.p_list:
            raise ContractViolation(f"L^{order_label(p)} was not recorded (have {self.p_list})")
        return np.array([s.lp[float(p)] for s in self.samples], dtype=np.float64)

    def hs(self, s: float) -> np.ndarray:
        if float(s) not in self.s_list:
            raise ContractViolation(f"H^{order_label(s)} was not recorded (have {self.s_list})")
        return np.array([smp.hs[float(s)] for smp in self.samples], dtype=np.float64)

    @property
    def H(self) -> float:
        """Running sup of the L^2 samples over the executed horizon."""
        return float(np.max(self.l2)) if self.samples else 0.0

    def running_H(self) -> np.ndarray:
        return np.maximum.accumulate(self.l2) if self.samples else np.zeros(0)

    def window(self, fraction: float) -> "NormHistory":
        """Samples with ``t >= t_0 + fraction (t_last - t_0)``."""
        if not 0.0 <= fraction < 1.0:
            raise ContractViolation(f"window fraction must be in [0, 1), got {fraction!r}")
        if not self.samples:
            return self
        t0, t1 = self.samples[0].t, self.samples[-1].t
        cutoff = t0 + fraction * (t1 - t0)
        kept = tuple(s for s in self.samples if s.t >= cutoff)
        return NormHistory(kept, self.p_list, self.s_list, self.variant, self.diverged_at)


@dataclass
class NormRecorder:
    """Observer that turns ``(t, u)`` snapshots into a :class:`NormHistory`."""

    grid: Grid
    p_list: Sequence[float] = ()
    s_list: Sequence[float] = ()
    variant: Optional[Variant] = None
    _samples: List[NormSample] = field(default_factory=list, init=False, repr=False)

    def __post_init__(self) -> None:
        self.p_list = tuple(float(p) for p in self.p_list)
        self.s_list = tuple(float(s) for s in self.s_list)

    def __call__(self, t: float, u: SpectralField) -> NormSample:
        lp: Dict[float, float] = {}
        if self.p_list:
            f = inverse_transform(u)
            lp = {p: lp_norm(f, p) for p in self.p_list}
        hs = {s: sobolev_norm(u, s) for s in self.s_list}
        grad_sq = gradient_norm_sq(u)
        integral = 0.0
        if self._samples:
            prev = self._samples[-1]
            integral = prev.grad_sq_integral + 0.5 * (t - prev.t) * (prev.grad_sq + grad_sq)
        sample = NormSample(
            t=float(t),
            l2=u.l2_norm(),
            lp=lp,
            hs=hs,
            mean_minus_phi=-field_integral(u),
            grad_sq=grad_sq,
            grad_sq_integral=integral,
        )
        self._samples.append(sample)
        return sample

    @property
    def last(self) -> Optional[NormSample]:
        return self._samples[-1] if self._samples else None

    def history(self, diverged_at: Optional[float] = None) -> NormHistory:
        return NormHistory(
            tuple(self._samples), self.p_list, self.s_list, self.variant, diverged_at
        )
