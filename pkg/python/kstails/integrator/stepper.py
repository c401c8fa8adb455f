"""Exponential (ETDRK4) and Crank-Nicolson (IMEX-CN) single steps.

ETDRK4 weights follow the Cox-Matthews scheme in the Kassam-Trefethen form:
the phi-functions are averaged over a circle of radius 1 around each
``z = lambda dt``, which keeps them accurate where the direct formulas cancel.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from kstails.errors import ContractViolation, DivergenceError
from kstails.integrator.config import Scheme, SteppingConfig
from kstails.models import ModelSpec, linear_symbol_array, nonlinear_term
from kstails.spectral.field import SpectralField
from kstails.spectral.grid import Grid

logger = logging.getLogger(__name__)

CONTOUR_POINTS = 32


def phi_weights(
    z: np.ndarray, n_points: int = CONTOUR_POINTS
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """ETDRK4 weights ``(q, f1, f2, f3)`` per unit ``dt`` at ``z = lambda dt``.

    ``q -> 1/2`` and ``f1, f2, f3 -> 1/6`` as ``z -> 0`` (classical RK4).
    """
    z = np.asarray(z, dtype=np.float64)
    flat, inverse = np.unique(z.ravel(), return_inverse=True)
    roots = np.exp(2j * math.pi * (np.arange(n_points) + 0.5) / n_points)
    lr = flat[:, None] + roots[None, :]
    e = np.exp(lr)
    lr3 = lr**3
    q = np.mean((np.exp(lr / 2.0) - 1.0) / lr, axis=1).real
    f1 = np.mean((-4.0 - lr + e * (4.0 - 3.0 * lr + lr * lr)) / lr3, axis=1).real
    f2 = np.mean((2.0 + lr + e * (lr - 2.0)) / lr3, axis=1).real
    f3 = np.mean((-4.0 - 3.0 * lr - lr * lr + e * (4.0 - lr)) / lr3, axis=1).real
    shape = z.shape
    return tuple(w[inverse].reshape(shape) for w in (q, f1, f2, f3))  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class Stepper:
    """Per-mode propagators for one ``(model, grid, dt)``; rebuild on any change."""

    model: ModelSpec
    grid: Grid
    dt: float
    scheme: Scheme
    lam: np.ndarray
    exp_full: np.ndarray
    exp_half: np.ndarray
    q: Optional[np.ndarray] = None
    f1: Optional[np.ndarray] = None
    f2: Optional[np.ndarray] = None
    f3: Optional[np.ndarray] = None
    cn_explicit: Optional[np.ndarray] = None
    cn_implicit_inv: Optional[np.ndarray] = None

    def nonlinear(self, a: np.ndarray) -> np.ndarray:
        return nonlinear_term(self.model, SpectralField(self.grid, a)).coefficients


def make_stepper(m: ModelSpec, g: Grid, c: SteppingConfig) -> Stepper:
    if not isinstance(c, SteppingConfig):
        raise ContractViolation(f"expected a SteppingConfig, got {type(c).__name__}")
    m.check_grid(g)
    dt = c.dt
    lam = linear_symbol_array(m, g)
    z = lam * dt
    # exp overflow is only possible for unphysically large positive lambda dt
    if np.max(z) > 700:
        raise ContractViolation(f"lambda*dt={np.max(z):.3g} overflows the exponential propagator")
    fields = dict(
        model=m,
        grid=g,
        dt=dt,
        scheme=c.scheme,
        lam=lam,
        exp_full=np.exp(z),
        exp_half=np.exp(0.5 * z),
    )
    if c.scheme is Scheme.ETDRK4:
        q, f1, f2, f3 = phi_weights(z)
        fields.update(q=dt * q, f1=dt * f1, f2=dt * f2, f3=dt * f3)
    else:
        fields.update(
            cn_explicit=1.0 + 0.5 * z,
            cn_implicit_inv=1.0 / (1.0 - 0.5 * z),
        )
    logger.debug(
        "stepper %s on %s: dt=%g, lambda in [%.3g, %.3g]",
        c.scheme.value, g, dt, float(np.min(lam)), float(np.max(lam)),
    )
    for arr in fields.values():
        if isinstance(arr, np.ndarray):
            arr.setflags(write=False)
    return Stepper(**fields)


def _etdrk4(st: Stepper, v: np.ndarray) -> np.ndarray:
    n_v = st.nonlinear(v)
    a = st.exp_half * v + st.q * n_v
    n_a = st.nonlinear(a)
    b = st.exp_half * v + st.q * n_a
    n_b = st.nonlinear(b)
    c = st.exp_half * a + st.q * (2.0 * n_b - n_v)
    n_c = st.nonlinear(c)
    return st.exp_full * v + st.f1 * n_v + 2.0 * st.f2 * (n_a + n_b) + st.f3 * n_c


def _imex_cn(st: Stepper, v: np.ndarray) -> np.ndarray:
    # Crank-Nicolson on lambda, Heun predictor-corrector on N
    n_v = st.nonlinear(v)
    predicted = st.cn_implicit_inv * (st.cn_explicit * v + st.dt * n_v)
    n_p = st.nonlinear(predicted)
    return st.cn_implicit_inv * (st.cn_explicit * v + 0.5 * st.dt * (n_v + n_p))


def step(st: Stepper, u: SpectralField, dt: float, t: float = 0.0) -> SpectralField:
    """Advance ``u`` from time ``t`` by ``dt`` (which must be the stepper's)."""
    if not math.isclose(dt, st.dt, rel_tol=1e-12, abs_tol=0.0):
        raise ContractViolation(f"step dt={dt!r} differs from the stepper's dt={st.dt!r}")
    if u.grid != st.grid:
        raise ContractViolation(f"field grid {u.grid} differs from stepper grid {st.grid}")
    v = u.coefficients
    with np.errstate(over="ignore", invalid="ignore"):
        if st.model.linear_only:
            out = st.exp_full * v
        elif st.scheme is Scheme.ETDRK4:
            out = _etdrk4(st, v)
        else:
            out = _imex_cn(st, v)
    if not np.all(np.isfinite(out)):
        raise DivergenceError("non-finite coefficients after step", t + dt)
    return u.with_coefficients(out)
