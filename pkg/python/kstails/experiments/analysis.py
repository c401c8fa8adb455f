"""Fits recomputed from a run directory's CSVs.

``fits.json`` is always produced here from the files on disk, for fresh runs
as well as for ``kstails analyze``, so re-analysis reproduces it byte for byte.
"""

from __future__ import annotations

import dataclasses
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from kstails.diagnostics.blowup import (
    BlowupCaps,
    blowup_monitor,
    gronwall_constant,
    mean_drift_residual,
    sobolev_bound_ratios,
)
from kstails.diagnostics.history import NormHistory, order_label
from kstails.diagnostics.recursion import (
    compute_j0,
    compute_j0_kp,
    tail_recursion_margin,
    tail_recursion_margin_kp,
)
from kstails.diagnostics.tails import TailProfile, gevrey_fit, second_differences
from kstails.errors import ConfigError, InsufficientDataError, RunDirectoryError
from kstails.experiments.config import ExperimentConfig, from_flat
from kstails.experiments.output import (
    CONFIG_YAML,
    FITS_JSON,
    NORMS_CSV,
    TAILS_CSV,
    read_config_yaml,
    read_norms_csv,
    read_tails_csv,
    write_json,
)
from kstails.models import Variant

logger = logging.getLogger(__name__)


def attach_energies(history: NormHistory, tails: Sequence[TailProfile]) -> List[TailProfile]:
    """Fill ``TailProfile.energy`` with ``l2^2`` of the norm sample at the same time."""
    by_t = {s.t: s.l2 * s.l2 for s in history.samples}
    out = []
    for p in tails:
        if p.t not in by_t:
            raise RunDirectoryError(f"tail profile at t={p.t!r} has no matching norm sample")
        out.append(dataclasses.replace(p, energy=by_t[p.t]))
    return out


def _fit_profiles(tails: Sequence[TailProfile], fit_times: Sequence[float]) -> List[TailProfile]:
    """First profile at or after each requested time, plus the last one, without repeats."""
    chosen: List[TailProfile] = []
    for target in fit_times:
        match = next((p for p in tails if p.t >= target), None)
        if match is not None and match not in chosen:
            chosen.append(match)
    if tails and tails[-1] not in chosen:
        chosen.append(tails[-1])
    return chosen


def _gevrey_entry(profile: TailProfile, noise_floor: Optional[float]) -> Dict[str, Any]:
    entry: Dict[str, Any] = {"t": profile.t}
    try:
        entry["fit"] = gevrey_fit(profile, noise_floor).as_dict()
    except InsufficientDataError as exc:
        entry["fit"] = None
        entry["error"] = str(exc)
    diffs = second_differences(profile, noise_floor)
    entry["second_differences"] = diffs.tolist()
    entry["concave"] = bool(diffs.size > 0 and np.all(diffs < 0))
    return entry


def compute_fits(
    history: NormHistory,
    tails: Sequence[TailProfile],
    cfg: ExperimentConfig,
    noise_floor: Optional[float] = None,
) -> Dict[str, Any]:
    diag = cfg.diagnostics
    floor = diag.noise_floor if noise_floor is None else noise_floor
    fits: Dict[str, Any] = {"noise_floor": floor, "sup_fraction": diag.sup_fraction}
    if len(history) == 0:
        fits["empty"] = True
        return fits

    tails = attach_energies(history, tails)
    late = history.window(diag.sup_fraction)
    H = history.H
    fits["horizon"] = {"t_start": float(history.times[0]), "t_end": float(history.times[-1])}
    fits["H"] = H
    fits["H_window"] = late.H
    fits["verdict"] = blowup_monitor(history, BlowupCaps(l2_cap=cfg.stepping.max_amplitude)).as_dict()
    if tails:
        fits["tail_multiplier"] = tails[0].multiplier

    fits["gevrey"] = [_gevrey_entry(p, floor) for p in _fit_profiles(tails, diag.fit_times)]

    j0 = compute_j0(H, diag.C) if H > 0 else 0
    kp_rule = {}
    for p in history.p_list:
        K_p = float(np.max(history.lp(p)))
        if p > 2:
            kp_rule[order_label(p)] = compute_j0_kp(K_p, p, diag.C)
    fits["j0"] = {"H_rule": j0, "Kp_rule": kp_rule}

    window_tails = [p for p in tails if late.samples and p.t >= late.samples[0].t]
    fits["recursion_margin"] = _margin_or_error(
        lambda: tail_recursion_margin(window_tails, H, j0) if H > 0 else {}
    )
    kp_margins = {}
    for p in history.p_list:
        if p > 2:
            K_p = float(np.max(history.lp(p)))
            j0_p = kp_rule[order_label(p)]
            kp_margins[order_label(p)] = _margin_or_error(
                lambda: tail_recursion_margin_kp(window_tails, K_p, p, j0_p) if K_p > 0 else {}
            )
    fits["recursion_margin_kp"] = kp_margins

    ratios: Dict[str, float] = {}
    for s in history.s_list:
        for p in history.p_list:
            ratios.update(sobolev_bound_ratios(history, s, p, diag.sup_fraction))
    fits["sobolev_bound_ratios"] = ratios

    if history.variant is Variant.KS2D:
        fits["grad_sq_integral"] = float(history.grad_sq_integral[-1])
        fits["gronwall_constant"] = gronwall_constant(history)
        try:
            fits["mean_drift_residual"] = mean_drift_residual(history)
        except InsufficientDataError as exc:
            fits["mean_drift_residual"] = None
            logger.warning("mean drift residual skipped: %s", exc)
    return fits


def _margin_or_error(compute) -> Dict[str, Any]:
    try:
        margins = compute()
    except InsufficientDataError as exc:
        return {"error": str(exc)}
    return {"margins": {str(j): v for j, v in sorted(margins.items())}}


def load_run_config(directory: Path) -> ExperimentConfig:
    flat = read_config_yaml(directory / CONFIG_YAML)
    try:
        return from_flat(flat)
    except ConfigError as exc:
        raise RunDirectoryError(f"{directory / CONFIG_YAML}: {exc}") from exc


def analyze_run(directory, noise_floor: Optional[float] = None) -> Dict[str, Any]:
    """Recompute ``fits.json`` from ``config.yaml``, ``norms.csv`` and ``tails.csv``."""
    directory = Path(directory)
    if not directory.is_dir():
        raise RunDirectoryError(f"run directory {directory} does not exist")
    cfg = load_run_config(directory)
    history = read_norms_csv(directory / NORMS_CSV, cfg.model.variant)
    tails = read_tails_csv(directory / TAILS_CSV, cfg.grid.L)
    fits = compute_fits(history, tails, cfg, noise_floor)
    write_json(fits, directory / FITS_JSON)
    logger.info("wrote %s", directory / FITS_JSON)
    return fits
