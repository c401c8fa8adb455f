"""Domain-size sweeps and their log-log regressions.

Members run concurrently on a thread pool (the FFTs release the GIL); each
keeps ``N / L`` fixed so resolution does not confound the slope.
"""

from __future__ import annotations

import logging
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from kstails.diagnostics.history import NormHistory
from kstails.errors import (
    ConfigError,
    ContractViolation,
    DivergenceError,
    InsufficientDataError,
    SweepError,
)
from kstails.experiments.analysis import load_run_config
from kstails.experiments.config import ExperimentConfig, to_flat, with_overrides
from kstails.experiments.output import NORMS_CSV, SCALING_JSON, read_norms_csv, write_json
from kstails.experiments.runner import run_experiment
from kstails.record import RunRecord

logger = logging.getLogger(__name__)

MEMBERS_DIR = "members"

_OBSERVABLE = re.compile(r"^sup_(L2|Hs|Lp)(?:\(([^)]+)\))?$")


@dataclass(frozen=True)
class Observable:
    name: str
    kind: str
    order: Optional[float] = None

    def series(self, history: NormHistory) -> np.ndarray:
        if self.kind == "L2":
            return history.l2
        if self.kind == "Hs":
            return history.hs(self.order)
        return history.lp(self.order)

    def sup(self, history: NormHistory, fraction: float = 0.0) -> float:
        window = history.window(fraction) if fraction > 0 else history
        values = self.series(window)
        if values.size == 0:
            raise InsufficientDataError(f"{self.name}: no samples in the window")
        return float(np.max(values))


def parse_observable(name: str) -> Observable:
    """``sup_L2``, ``sup_Hs(2)``, ``sup_Lp(4)`` or ``sup_Lp(inf)``."""
    m = _OBSERVABLE.match(name.strip())
    if not m:
        raise ConfigError(f"unknown observable {name!r}; expected sup_L2, sup_Hs(s) or sup_Lp(p)")
    kind, arg = m.group(1), m.group(2)
    if kind == "L2":
        if arg is not None:
            raise ConfigError(f"sup_L2 takes no argument, got {name!r}")
        return Observable(name, kind)
    if arg is None:
        raise ConfigError(f"{name!r} needs an order, e.g. sup_{kind}(2)")
    try:
        order = float(arg)
    except ValueError:
        raise ConfigError(f"{name!r}: bad order {arg!r}") from None
    if kind == "Lp" and not order >= 1:
        raise ConfigError(f"{name!r}: p must be >= 1")
    if kind == "Hs" and not order >= 0:
        raise ConfigError(f"{name!r}: s must be >= 0")
    return Observable(name, kind, order)


@dataclass(frozen=True)
class ScalingFit:
    """``log value = intercept + slope log L`` by least squares."""

    observable: str
    pairs: Tuple[Tuple[float, float], ...]
    slope: float
    intercept: float
    residual: float
    full_pairs: Tuple[Tuple[float, float], ...] = field(default=())

    def as_dict(self) -> Dict[str, Any]:
        return {
            "observable": self.observable,
            "pairs": [list(p) for p in self.pairs],
            "full_history_pairs": [list(p) for p in self.full_pairs],
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
        }


def fit_power_law(
    pairs: Sequence[Tuple[float, float]], observable: str = "", full_pairs: Sequence[Tuple[float, float]] = ()
) -> ScalingFit:
    if len(pairs) < 3:
        raise InsufficientDataError(f"a scaling slope needs at least 3 L values, got {len(pairs)}")
    L = np.array([p[0] for p in pairs], dtype=np.float64)
    v = np.array([p[1] for p in pairs], dtype=np.float64)
    if np.any(L <= 0) or np.any(v <= 0):
        raise ContractViolation(f"power-law fit needs positive (L, value) pairs, got {list(pairs)}")
    x, y = np.log(L), np.log(v)
    design = np.column_stack([np.ones_like(x), x])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    residual = float(np.sqrt(np.mean((design @ coef - y) ** 2)))
    return ScalingFit(
        observable=observable,
        pairs=tuple((float(a), float(b)) for a, b in pairs),
        slope=float(coef[1]),
        intercept=float(coef[0]),
        residual=residual,
        full_pairs=tuple((float(a), float(b)) for a, b in full_pairs),
    )


def member_config(
    base: ExperimentConfig,
    L: float,
    index: int,
    observable: Observable,
    origin: Optional[ExperimentConfig] = None,
) -> ExperimentConfig:
    """``base`` at half-length ``L`` with ``N`` scaled to keep ``N / L`` (even).

    ``origin`` is the sweep's base when ``base`` is already a member config.
    """
    origin = base if origin is None else origin
    n = max(8, 2 * int(round(origin.grid.N * L / origin.grid.L / 2)))
    overrides: Dict[str, Any] = {
        "grid.L": float(L),
        "grid.N": n,
        "output": str(Path(origin.output) / MEMBERS_DIR / f"L_{index}"),
    }
    flat = to_flat(base)
    if observable.kind == "Hs" and observable.order not in flat["diagnostics.s_list"]:
        overrides["diagnostics.s_list"] = flat["diagnostics.s_list"] + [observable.order]
    if observable.kind == "Lp" and observable.order not in flat["diagnostics.p_list"]:
        overrides["diagnostics.p_list"] = flat["diagnostics.p_list"] + [observable.order]
    top = base.initial_data.top_index
    if top is not None and top >= n // 2:
        overrides["initial_data.top_index"] = n // 2 - 1
    return with_overrides(base, overrides)


def _run_member(cfg: ExperimentConfig, emit: bool) -> RunRecord:
    try:
        record = run_experiment(cfg, emit=emit)
    except DivergenceError as exc:
        raise SweepError(f"member diverged: {exc}", L=cfg.grid.L) from exc
    if record.diverged:
        raise SweepError(
            f"member diverged at t*={record.verdict.t_star:g}", L=cfg.grid.L
        )
    logger.info("sweep member L=%g done: H=%.6g", cfg.grid.L, record.H)
    return record


def run_members(
    base: ExperimentConfig,
    L_values: Sequence[float],
    observables: Sequence[Observable],
    workers: Optional[int] = None,
    emit: bool = True,
) -> List[Tuple[ExperimentConfig, RunRecord]]:
    """Run one member per ``L``; every member records all of ``observables``."""
    if len(L_values) < 3:
        raise InsufficientDataError(f"a sweep needs at least 3 L values, got {len(L_values)}")
    members = []
    for i, L in enumerate(L_values):
        cfg = base
        for obs in observables:
            cfg = member_config(cfg, L, i, obs, origin=base)
        members.append(cfg)
    workers = workers or base.sweep.workers or min(len(members), os.cpu_count() or 1)
    logger.info("sweep of %d members over %d workers", len(members), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_member, cfg, emit) for cfg in members]
        records = [f.result() for f in futures]
    return list(zip(members, records))


def scaling_fit(
    results: Sequence[Tuple[ExperimentConfig, RunRecord]], obs: Observable, fraction: float
) -> ScalingFit:
    return fit_power_law(
        [(cfg.grid.L, obs.sup(rec.history, fraction)) for cfg, rec in results],
        observable=obs.name,
        full_pairs=[(cfg.grid.L, obs.sup(rec.history)) for cfg, rec in results],
    )


def sweep_scaling(
    base: ExperimentConfig,
    L_values: Optional[Sequence[float]] = None,
    observable: Optional[str] = None,
    workers: Optional[int] = None,
    emit: bool = True,
) -> ScalingFit:
    """Run ``base`` at every ``L`` and regress the observable's second-half sup on ``L``.

    Arguments left as ``None`` come from ``base.sweep``.
    """
    L_values = tuple(base.sweep.L_values if L_values is None else L_values)
    obs = parse_observable(base.sweep.observable if observable is None else observable)
    results = run_members(base, L_values, [obs], workers, emit)
    fit = scaling_fit(results, obs, base.diagnostics.sup_fraction)
    logger.info("sweep %s: slope %.4f (rms %.3g)", obs.name, fit.slope, fit.residual)
    if emit:
        out = Path(base.output)
        out.mkdir(parents=True, exist_ok=True)
        write_json(fit.as_dict(), out / SCALING_JSON)
    return fit


def analyze_sweep(directory, observable: Optional[str] = None) -> ScalingFit:
    """Recompute ``scaling.json`` from the member directories of a sweep."""
    directory = Path(directory)
    members_root = directory / MEMBERS_DIR
    member_dirs = sorted(
        (p for p in members_root.glob("L_*") if (p / NORMS_CSV).is_file()),
        key=lambda p: int(p.name.split("_", 1)[1]),
    )
    pairs: List[Tuple[float, float]] = []
    full: List[Tuple[float, float]] = []
    obs: Optional[Observable] = None
    for path in member_dirs:
        cfg = load_run_config(path)
        if obs is None:
            obs = parse_observable(observable or cfg.sweep.observable)
        history = read_norms_csv(path / NORMS_CSV, cfg.model.variant)
        pairs.append((cfg.grid.L, obs.sup(history, cfg.diagnostics.sup_fraction)))
        full.append((cfg.grid.L, obs.sup(history)))
    fit = fit_power_law(pairs, observable=obs.name if obs else "", full_pairs=full)
    write_json(fit.as_dict(), directory / SCALING_JSON)
    return fit


def is_sweep_directory(directory) -> bool:
    return (Path(directory) / MEMBERS_DIR).is_dir()


@dataclass(frozen=True)
class ResolutionCheck:
    base_mean: float
    refined_mean: float
    relative_change: float
    under_resolved: bool

    def as_dict(self) -> Dict[str, Any]:
        return {
            "base_mean_l2": self.base_mean,
            "refined_mean_l2": self.refined_mean,
            "relative_change": self.relative_change,
            "under_resolved": self.under_resolved,
        }


RESOLUTION_TOLERANCE = 0.02


def resolution_check(cfg: ExperimentConfig, base: Optional[RunRecord] = None) -> ResolutionCheck:
    """Rerun with ``2N`` and ``dt/2``; flag a ``>= 2%`` change of the windowed mean L^2 norm."""
    fraction = cfg.diagnostics.sup_fraction
    if base is None:
        base = run_experiment(cfg, emit=False)
    refined_cfg = with_overrides(
        cfg, {"grid.N": 2 * cfg.grid.N, "stepping.dt": cfg.stepping.dt / 2}
    )
    refined = run_experiment(refined_cfg, emit=False)
    a = float(np.mean(base.history.window(fraction).l2))
    b = float(np.mean(refined.history.window(fraction).l2))
    change = abs(b - a) / a if a > 0 else (0.0 if b == 0 else math.inf)
    flagged = change >= RESOLUTION_TOLERANCE
    if flagged:
        logger.warning(
            "under-resolved: windowed mean L2 moved %.2f%% under 2N, dt/2", 100 * change
        )
    return ResolutionCheck(a, b, change, flagged)
