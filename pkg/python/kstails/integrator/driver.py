"""Fixed-step time loop with sampling observers and the amplitude guard."""

from __future__ import annotations

import logging
import math
import time
from typing import Any, Callable, List, Mapping, Optional, Sequence

import numpy as np

from kstails.diagnostics.blowup import BlowupCaps, blowup_monitor
from kstails.diagnostics.history import NormRecorder
from kstails.diagnostics.tails import TailRecorder
from kstails.errors import ContractViolation
from kstails.integrator.config import SteppingConfig
from kstails.integrator.stepper import Stepper, step
from kstails.models import Variant
from kstails.record import RunRecord
from kstails.spectral.field import SpectralField, inverse_transform
from kstails.spectral.operators import partial_derivative

logger = logging.getLogger(__name__)

Observer = Callable[[float, SpectralField], Any]

CFL_SAFETY = 0.25


def _advection_speed(st: Stepper, u: SpectralField) -> float:
    """``max |u|``, or ``max |grad phi|`` for KS2D."""
    if st.model.variant is Variant.KS2D:
        sq = None
        for axis in range(u.grid.d):
            comp = inverse_transform(partial_derivative(u, axis)).samples
            sq = comp * comp if sq is None else sq + comp * comp
        return float(np.sqrt(np.max(sq)))
    return float(np.max(np.abs(inverse_transform(u).samples)))


def cfl_advisory(st: Stepper, u: SpectralField) -> Optional[str]:
    """Warning text when ``dt > 0.25 h / max|velocity|``, else ``None``."""
    speed = _advection_speed(st, u)
    if speed == 0.0:
        return None
    limit = CFL_SAFETY * st.grid.spacing / speed
    if st.dt > limit:
        return f"dt={st.dt:g} exceeds the advisory CFL limit {limit:.3g} (max speed {speed:.3g})"
    return None


def integrate(
    st: Stepper,
    u0: SpectralField,
    c: SteppingConfig,
    observers: Sequence[Observer] = (),
    *,
    norms: Optional[NormRecorder] = None,
    tails: Optional[TailRecorder] = None,
    t0: float = 0.0,
    config: Optional[Mapping[str, Any]] = None,
) -> RunRecord:
    """Advance ``u0`` to ``t0 + t_end``, sampling every ``sample_interval``.

    The run stops at the first step whose ``||u||_{L^2}`` exceeds
    ``max_amplitude``; that state is sampled and the verdict is ``diverged``.
    Non-finite states raise :class:`~kstails.errors.DivergenceError`.
    """
    if u0.grid != st.grid:
        raise ContractViolation(f"initial field grid {u0.grid} differs from stepper grid {st.grid}")
    if not math.isclose(c.dt, st.dt, rel_tol=1e-12):
        raise ContractViolation(f"config dt={c.dt!r} differs from the stepper's dt={st.dt!r}")

    warnings: List[str] = []
    per_sample = c.steps_per_sample
    if not math.isclose(per_sample * c.dt, c.sample_interval, rel_tol=1e-9):
        msg = (
            f"sample_interval={c.sample_interval:g} is not a multiple of dt={c.dt:g}; "
            f"sampling every {per_sample} steps ({per_sample * c.dt:g})"
        )
        logger.warning(msg)
        warnings.append(msg)
    total = c.total_steps

    if norms is None:
        norms = NormRecorder(st.grid, variant=st.model.variant)
    recorders: List[Observer] = [norms]
    if tails is not None:
        recorders.append(tails)
    recorders.extend(observers)

    cfl_warned = False

    def sample(t: float, u: SpectralField) -> None:
        nonlocal cfl_warned
        for obs in recorders:
            obs(t, u)
        if not cfl_warned:
            advisory = cfl_advisory(st, u)
            if advisory is not None:
                logger.warning("%s at t=%g", advisory, t)
                warnings.append(advisory)
                cfl_warned = True

    logger.info(
        "integrating %s on %s with %s: %d steps of %g, sampling every %d",
        st.model.variant.value, st.grid, st.scheme.value, total, st.dt, per_sample,
    )
    started = time.perf_counter()
    u = u0
    t = t0
    sample(t, u)
    diverged_at: Optional[float] = None
    n = 0
    while n < total:
        u = step(st, u, st.dt, t=t)
        n += 1
        t = t0 + n * st.dt
        if u.l2_norm() > c.max_amplitude:
            diverged_at = t
            sample(t, u)
            logger.info("||u|| exceeded %.3g at t=%g; stopping", c.max_amplitude, t)
            break
        if n % per_sample == 0 or n == total:
            sample(t, u)
    wall = time.perf_counter() - started

    history = norms.history(diverged_at=diverged_at)
    verdict = blowup_monitor(history, BlowupCaps(l2_cap=c.max_amplitude))
    logger.info(
        "finished at t=%g after %d steps (%.2fs): %s, H=%.6g",
        t, n, wall, verdict.kind.value, history.H,
    )
    return RunRecord(
        history=history,
        tails=tuple(tails.profiles) if tails is not None else (),
        verdict=verdict,
        final=u,
        t_final=t,
        steps=n,
        wall_seconds=wall,
        warnings=tuple(warnings),
        config=config,
    )
