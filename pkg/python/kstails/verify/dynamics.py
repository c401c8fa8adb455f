"""Suites that integrate the equations: monotonicity, Gevrey tails, scaling, 2D bookkeeping."""

from __future__ import annotations

import math
from typing import Any, Dict, List, Mapping, Sequence

import numpy as np

from kstails.diagnostics.blowup import VerdictKind, mean_drift_residual
from kstails.diagnostics.history import NormHistory
from kstails.diagnostics.tails import TailProfile, gevrey_fit, second_differences
from kstails.errors import InsufficientDataError, KstailsError
from kstails.experiments.analysis import compute_fits
from kstails.experiments.config import from_flat
from kstails.experiments.output import FITS_JSON, read_json
from kstails.experiments.runner import run_experiment
from kstails.experiments.sweep import parse_observable, run_members, scaling_fit
from kstails.record import RunRecord
from kstails.verify.core import Check, VerifyOptions, suite

MONOTONE_TOLERANCE = 1e-8
FIT_STABILITY = 0.10
L2_SLOPE_BOUND = 1.5 + 0.1
H2_SLOPE_BOUND = 2.8 + 0.1
# the auto multiplier is C0 H^{2/5}; 1/8 keeps several dyadic tails above the noise floor
KS1D_C0 = 0.125
GEVREY_START = 2.5


def _burgers(s: float, seed: int, N: int = 512, dt: float = 5e-4) -> RunRecord:
    cfg = from_flat(
        {
            "model.variant": "RegBurgers",
            "model.s": s,
            "grid.L": math.pi,
            "grid.N": N,
            "stepping.dt": dt,
            "stepping.t_end": 1.0,
            "stepping.sample_interval": 0.01,
            "initial_data.amplitude": 1.0,
            "initial_data.seed": seed,
            "diagnostics.p_list": [2, 4, 8],
            "diagnostics.s_list": [],
            "diagnostics.tail_multiplier": 1.0,
        }
    )
    return run_experiment(cfg, emit=False)


def _largest_increase(history: NormHistory, p: float) -> float:
    v = history.lp(p)
    return float(np.max(np.diff(v) / v[:-1]))


@suite("burgers-monotonicity")
def burgers_monotonicity(options: VerifyOptions) -> List[Check]:
    checks = []
    for s in (1.5, 2.0):
        history = _burgers(s, options.seed).history
        for p in (2, 4, 8):
            checks.append(
                Check.at_most(f"s={s:g} L^{p} relative increase", _largest_increase(history, p), MONOTONE_TOLERANCE)
            )
    return checks


def _profile_checks(label: str, profile: TailProfile) -> List[Check]:
    try:
        fit = gevrey_fit(profile)
    except InsufficientDataError as exc:
        return [Check.failed(f"{label} fit", str(exc))]
    diffs = second_differences(profile)
    return [
        Check(f"{label} quadratic coefficient", fit.c, "> 0", bool(fit.c > 0)),
        Check.holds(
            f"{label} concave above floor",
            diffs.size > 0 and bool(np.all(diffs < 0)),
            float(np.max(diffs)) if diffs.size else "no triples",
        ),
    ]


@suite("burgers-gevrey")
def burgers_gevrey(options: VerifyOptions) -> List[Check]:
    checks: List[Check] = []
    for s in (1.5, 2.0):
        coarse = _burgers(s, options.seed).tails[-1]
        checks.extend(_profile_checks(f"s={s:g} t={coarse.t:g}", coarse))
        fine = _burgers(s, options.seed, N=1024, dt=2.5e-4).tails[-1]
        try:
            c0, c1 = gevrey_fit(coarse).c, gevrey_fit(fine).c
            change = abs(c1 - c0) / abs(c0)
            checks.append(Check.at_most(f"s={s:g} fit change under 2x resolution", change, FIT_STABILITY))
        except InsufficientDataError as exc:
            checks.append(Check.failed(f"s={s:g} fit change under 2x resolution", str(exc)))
    return checks


def _ks1d(overrides: Mapping[str, Any], seed: int) -> Dict[str, Any]:
    flat: Dict[str, Any] = {
        "model.variant": "KS1D",
        "grid.L": 25 * math.pi,
        "grid.N": 2048,
        "stepping.dt": 0.05,
        "stepping.t_end": 200.0,
        "stepping.sample_interval": 0.5,
        "initial_data.seed": seed,
        "diagnostics.tail_multiplier": "auto",
        "diagnostics.C0": KS1D_C0,
        "diagnostics.fit_times": [GEVREY_START, 100.0, 150.0],
    }
    flat.update(overrides)
    return flat


def _finite_margins(label: str, block: Mapping[str, Any]) -> Check:
    if "error" in block:
        return Check.failed(label, block["error"])
    values = list(block["margins"].values())
    if not values:
        return Check.failed(label, "no margins above the noise floor")
    finite = all(math.isfinite(v) for v in values)
    return Check.holds(label, finite, f"{len(values)} finite" if finite else "non-finite")


def gevrey_checks(overrides: Mapping[str, Any], seed: int, prefix: str = "") -> List[Check]:
    cfg = from_flat(_ks1d(overrides, seed))
    record = run_experiment(cfg, emit=False)
    fits = compute_fits(record.history, record.tails, cfg)
    start = max(GEVREY_START, float(record.history.window(cfg.diagnostics.sup_fraction).times[0]))
    checks: List[Check] = []
    for profile in record.tails:
        if profile.t >= start and any(math.isclose(profile.t, e["t"]) for e in fits["gevrey"]):
            checks.extend(_profile_checks(f"{prefix}t={profile.t:g}", profile))
    if not checks:
        checks.append(Check.failed(f"{prefix}gevrey fits", "no profile after the transient"))
    checks.append(_finite_margins(f"{prefix}recursion margins", fits["recursion_margin"]))
    for label, block in sorted(fits["recursion_margin_kp"].items()):
        checks.append(_finite_margins(f"{prefix}L^{label} recursion margins", block))
    return checks


@suite("ks1d-gevrey")
def ks1d_gevrey(options: VerifyOptions) -> List[Check]:
    return gevrey_checks({}, options.seed)


SCALING_L = (8 * math.pi, 16 * math.pi, 32 * math.pi)


def scaling_checks(overrides: Mapping[str, Any], seed: int, prefix: str = "") -> List[Check]:
    flat: Dict[str, Any] = {
        "model.variant": "KS1D",
        "grid.L": 16 * math.pi,
        "grid.N": 512,
        "initial_data.seed": seed,
        "diagnostics.s_list": [2],
        "diagnostics.p_list": [],
    }
    flat.update(overrides)
    base = from_flat(flat)
    l2, h2 = parse_observable("sup_L2"), parse_observable("sup_Hs(2)")
    try:
        results = run_members(base, SCALING_L, [l2, h2], emit=False)
    except KstailsError as exc:
        return [Check.failed(f"{prefix}sweep", str(exc))]
    fraction = base.diagnostics.sup_fraction
    l2_fit = scaling_fit(results, l2, fraction)
    h2_fit = scaling_fit(results, h2, fraction)
    return [
        Check.at_most(f"{prefix}sup L2 slope", l2_fit.slope, L2_SLOPE_BOUND),
        Check.at_most(f"{prefix}sup H2 slope", h2_fit.slope, H2_SLOPE_BOUND),
    ]


@suite("scaling-bounds")
def scaling_bounds(options: VerifyOptions) -> List[Check]:
    return scaling_checks({}, options.seed)


DESTABILIZED = {"model.variant": "DestabilizedKS1D", "model.eta": 0.1}


@suite("destabilized-ks")
def destabilized_ks(options: VerifyOptions) -> List[Check]:
    return gevrey_checks(DESTABILIZED, options.seed, "eta=0.1 ") + scaling_checks(
        DESTABILIZED, options.seed, "eta=0.1 "
    )


DRIFT_BOUND = 1e-4


def _every_other(history: NormHistory) -> NormHistory:
    return NormHistory(history.samples[::2], history.p_list, history.s_list, history.variant)


def _synthetic_divergence() -> Sequence[Check]:
    """A single exponentially growing mode against its closed-form cap crossing."""
    eta = 5.0
    cfg = from_flat(
        {
            "model.variant": "DestabilizedKS1D",
            "model.eta": eta,
            "model.linear_only": True,
            "grid.L": math.pi,
            "grid.N": 16,
            "stepping.dt": 0.01,
            "stepping.t_end": 5.0,
            "stepping.sample_interval": 0.05,
            "stepping.max_amplitude": 1e6,
            "initial_data.kind": "single_mode",
            "initial_data.k": [1],
            "initial_data.amplitude": 1.0,
            "diagnostics.p_list": [],
            "diagnostics.s_list": [],
        }
    )
    record = run_experiment(cfg, emit=False)
    # mode 1 has xi = 1, so lambda = 1 - 1 + eta
    closed = math.log(cfg.stepping.max_amplitude / record.history.l2[0]) / eta
    t_star = record.verdict.t_star
    return [
        Check.holds("synthetic run diverged", record.verdict.kind is VerdictKind.DIVERGED, record.verdict.kind.value),
        Check.at_most(
            "|t* - closed form|",
            abs(t_star - closed) if t_star is not None else math.inf,
            cfg.stepping.sample_interval,
        ),
    ]


@suite("ks2d-blowup")
def ks2d_blowup(options: VerifyOptions) -> List[Check]:
    checks: List[Check] = []
    with options.directory("ks2d-blowup") as root:
        cfg = from_flat(
            {
                "model.variant": "KS2D",
                "grid.d": 2,
                "grid.L": 2 * math.pi,
                "grid.N": 128,
                "stepping.dt": 0.005,
                "stepping.t_end": 10.0,
                "stepping.sample_interval": 0.005,
                "initial_data.seed": options.seed,
                "initial_data.top_index": 2,
                "initial_data.amplitude": 1e-2,
                "diagnostics.p_list": [4],
                "diagnostics.s_list": [1],
                "output": str(root / "run"),
            }
        )
        record = run_experiment(cfg)
        fine = mean_drift_residual(record.history)
        coarse = mean_drift_residual(_every_other(record.history))
        checks.append(Check.at_most("mean drift residual (0.01)", coarse, DRIFT_BOUND))
        checks.append(Check.at_most("mean drift residual (0.005)", fine, DRIFT_BOUND))
        checks.append(Check.within("residual ratio on halving", coarse / fine if fine > 0 else math.inf, 3.0, 5.0))
        checks.append(Check.holds("verdict", record.verdict.kind is VerdictKind.BOUNDED, record.verdict.kind.value))

        fits = read_json(root / "run" / FITS_JSON)
        sup_l2 = fits["verdict"]["sup_l2"]
        integral = fits["grad_sq_integral"]
        checks.append(Check.holds("sup ||phi|| emitted and finite", sup_l2 is not None and math.isfinite(sup_l2), sup_l2 if sup_l2 is not None else "missing"))
        checks.append(Check.holds("int ||grad phi||^2 emitted and finite", integral is not None and math.isfinite(integral), integral if integral is not None else "missing"))
    checks.extend(_synthetic_divergence())
    return checks
