"""Config-driven single runs."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional, Sequence

from kstails.diagnostics.history import NormRecorder
from kstails.diagnostics.tails import TailRecorder
from kstails.experiments.analysis import analyze_run
from kstails.experiments.checkpoint import save_checkpoint
from kstails.experiments.config import AUTO, ExperimentConfig, to_flat
from kstails.experiments.initial_data import make_initial_field
from kstails.experiments.output import (
    CONFIG_YAML,
    FINAL_CHECKPOINT,
    RUN_JSON,
    emit_csv,
    run_summary,
    write_config_yaml,
    write_json,
)
from kstails.integrator.driver import Observer, integrate
from kstails.integrator.stepper import make_stepper
from kstails.record import RunRecord
from kstails.spectral.field import SpectralField

logger = logging.getLogger(__name__)


class _Checkpointer:
    """Saves ``state_<step>.ckpt`` on every ``every``-th sample."""

    def __init__(self, directory: Path, every: int, dt: float) -> None:
        self.directory = directory
        self.every = every
        self.dt = dt
        self._t0: Optional[float] = None
        self._count = 0

    def __call__(self, t: float, u: SpectralField) -> None:
        if self._t0 is None:
            self._t0 = t
        if self._count % self.every == 0:
            index = int(round((t - self._t0) / self.dt))
            save_checkpoint(u, t, self.directory / f"state_{index}.ckpt")
        self._count += 1


def resolve_tail_multiplier(cfg: ExperimentConfig) -> float:
    """``diagnostics.tail_multiplier``, or ``C0 H^{2/5}`` from a pilot run when it is ``auto``."""
    diag = cfg.diagnostics
    if diag.tail_multiplier != AUTO:
        return float(diag.tail_multiplier)
    pilot = _integrate(cfg, multiplier=None, observers=())
    H = pilot.history.window(diag.sup_fraction).H
    c = diag.C0 * H ** 0.4 if H > 0 else diag.C0
    logger.info("tail multiplier from pilot run: H=%.6g -> c=%.6g", H, c)
    return c


def _integrate(
    cfg: ExperimentConfig,
    multiplier: Optional[float],
    observers: Sequence[Observer],
) -> RunRecord:
    u0, t0 = make_initial_field(cfg)
    stepper = make_stepper(cfg.model, cfg.grid, cfg.stepping)
    norms = NormRecorder(
        cfg.grid,
        p_list=cfg.diagnostics.p_list,
        s_list=cfg.diagnostics.s_list,
        variant=cfg.model.variant,
    )
    tails = TailRecorder(multiplier, cfg.diagnostics.j_max) if multiplier is not None else None
    return integrate(
        stepper,
        u0,
        cfg.stepping,
        observers,
        norms=norms,
        tails=tails,
        t0=t0,
        config=to_flat(cfg),
    )


def emit_run(record: RunRecord, cfg: ExperimentConfig, directory: Optional[Path] = None) -> Path:
    """Write every run-directory file for ``record``; ``fits.json`` comes from re-reading the CSVs."""
    directory = Path(cfg.output if directory is None else directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_config_yaml(to_flat(cfg), directory / CONFIG_YAML)
    emit_csv(record, directory)
    save_checkpoint(record.final, record.t_final, directory / FINAL_CHECKPOINT)
    write_json(run_summary(record), directory / RUN_JSON)
    analyze_run(directory)
    return directory


def run_experiment(
    cfg: ExperimentConfig,
    emit: bool = True,
    observers: Sequence[Observer] = (),
) -> RunRecord:
    """Integrate ``cfg`` and, with ``emit``, write its run directory.

    Deterministic in ``cfg``: two calls give bit-identical histories.
    """
    multiplier = resolve_tail_multiplier(cfg)
    extra = list(observers)
    if emit and cfg.checkpoint_every > 0:
        directory = Path(cfg.output)
        directory.mkdir(parents=True, exist_ok=True)
        extra.append(_Checkpointer(directory, cfg.checkpoint_every, cfg.stepping.dt))
    record = _integrate(cfg, multiplier, extra)
    if emit:
        emit_run(record, cfg)
        logger.info("run written to %s", cfg.output)
    return record

