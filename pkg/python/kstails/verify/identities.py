"""Suites for exact identities: transforms, linear propagation, the j_0 rules, determinism."""

from __future__ import annotations

import itertools
import math
from typing import Dict, List

import numpy as np

from kstails.diagnostics.recursion import compute_j0, compute_j0_kp
from kstails.experiments.analysis import analyze_run
from kstails.experiments.checkpoint import encode_checkpoint, load_checkpoint
from kstails.experiments.config import from_flat
from kstails.experiments.output import (
    CONFIG_YAML,
    FINAL_CHECKPOINT,
    FITS_JSON,
    NORMS_CSV,
    TAILS_CSV,
    read_config_yaml,
)
from kstails.experiments.initial_data import random_band
from kstails.experiments.runner import run_experiment
from kstails.integrator.config import Scheme, SteppingConfig
from kstails.integrator.stepper import make_stepper, step
from kstails.models import ModelSpec, Variant, linear_symbol_array
from kstails.spectral.field import forward_transform, inverse_transform
from kstails.spectral.grid import Grid
from kstails.spectral.operators import lp_norm, triple_product_integral
from kstails.spectral.projection import dyadic_partition, high_pass, low_pass, project_band
from kstails.testing.fields import random_hermitian
from kstails.testing.oracles import dft_coefficients, triple_sum
from kstails.verify.core import Check, VerifyOptions, suite

FIELD_COUNT = 1000
SIZES_1D = (64, 128, 256, 512, 1024, 2048, 4096)
SIZES_2D = (16, 32, 64, 128, 256)
IDENTITY_TOLERANCE = 1e-11


def _relative(diff: np.ndarray, ref: np.ndarray) -> float:
    scale = float(np.max(np.abs(ref)))
    return float(np.max(np.abs(diff))) / scale if scale > 0 else float(np.max(np.abs(diff)))


@suite("spectral-identities")
def spectral_identities(options: VerifyOptions) -> List[Check]:
    rng = np.random.default_rng(options.seed)
    worst: Dict[str, float] = dict.fromkeys(
        ("plancherel", "round_trip", "partition", "dyadic_partition", "idempotence", "orthogonality"),
        0.0,
    )
    for i in range(FIELD_COUNT):
        if i % 2 == 0:
            grid = Grid(1, float(rng.uniform(0.5, 40.0)), SIZES_1D[(i // 2) % len(SIZES_1D)])
        else:
            grid = Grid(2, float(rng.uniform(0.5, 40.0)), SIZES_2D[(i // 2) % len(SIZES_2D)])
        u = random_hermitian(grid, rng, decay=float(rng.uniform(0.0, 0.05)))
        f = inverse_transform(u)

        plancherel = abs(lp_norm(f, 2) - u.l2_norm()) / u.l2_norm()
        worst["plancherel"] = max(worst["plancherel"], plancherel)
        back = forward_transform(f)
        worst["round_trip"] = max(
            worst["round_trip"], _relative(back.coefficients - u.coefficients, u.coefficients)
        )

        M = float(rng.uniform(1.0, grid.nyquist))
        parts = low_pass(u, M) + high_pass(u, M)
        worst["partition"] = max(
            worst["partition"], _relative(parts.coefficients - u.coefficients, u.coefficients)
        )
        pieces = dyadic_partition(u, max(1.0, M / 4))
        total = sum((p.coefficients for p in pieces), np.zeros(grid.shape, dtype=np.complex128))
        worst["dyadic_partition"] = max(
            worst["dyadic_partition"], _relative(total - u.coefficients, u.coefficients)
        )
        band = project_band(u, M / 2, M)
        twice = project_band(band, M / 2, M)
        worst["idempotence"] = max(
            worst["idempotence"], _relative(twice.coefficients - band.coefficients, u.coefficients)
        )

        # |k| > M and |m|, |n| <= M/4 leave no k + m + n = 0
        if i % 10 == 0:
            cut = grid.nyquist / 4
            a = high_pass(u, cut)
            b = low_pass(random_hermitian(grid, rng), cut / 4)
            c = low_pass(random_hermitian(grid, rng), cut / 4)
            scale = (
                a.l2_norm() * b.l2_norm() * float(np.sum(np.abs(c.coefficients)))
                / (2.0 * grid.L) ** (grid.d / 2)
            )
            if scale > 0:
                worst["orthogonality"] = max(
                    worst["orthogonality"], abs(triple_product_integral(a, b, c)) / scale
                )

    checks = [Check.at_most(name, value, IDENTITY_TOLERANCE) for name, value in worst.items()]
    checks.extend(_oracle_checks(rng))
    return checks


def _oracle_checks(rng: np.random.Generator) -> List[Check]:
    dft = 0.0
    triple = 0.0
    for grid in (Grid(1, 3.0, 16), Grid(1, 11.0, 32), Grid(2, 2.0, 8), Grid(2, 5.0, 10)):
        u = random_hermitian(grid, rng)
        samples = inverse_transform(u).samples
        ref = dft_coefficients(grid, samples)
        dft = max(dft, _relative(forward_transform(inverse_transform(u)).coefficients - ref, ref))
        f, g, h = (random_hermitian(grid, rng) for _ in range(3))
        exact = triple_sum(f, g, h)
        triple = max(triple, abs(triple_product_integral(f, g, h) - exact) / max(abs(exact), 1.0))
    return [
        Check.at_most("dft_oracle", dft, IDENTITY_TOLERANCE),
        Check.at_most("triple_product_oracle", triple, IDENTITY_TOLERANCE),
    ]


LINEAR_TOLERANCE = 1e-12
MIN_ETDRK4_ORDER = 3.5


def _linear_error(scheme: Scheme, seed: int) -> float:
    """Worst per-mode relative error per unit time of a ``linear_only`` run."""
    model = ModelSpec(Variant.KS1D, linear_only=True)
    grid = Grid(1, 8 * math.pi, 128)
    stepping = SteppingConfig(scheme=scheme, dt=0.01, t_end=1.0, sample_interval=0.1)
    st = make_stepper(model, grid, stepping)
    u0 = random_band(grid, seed, 25, 1.0)
    u = u0
    for n in range(stepping.total_steps):
        u = step(st, u, stepping.dt, t=n * stepping.dt)
    t = stepping.total_steps * stepping.dt
    exact = u0.coefficients * np.exp(linear_symbol_array(model, grid) * t)
    support = np.abs(exact) > 0
    if np.any(u.coefficients[~support] != 0):
        return math.inf
    rel = np.abs(u.coefficients[support] - exact[support]) / np.abs(exact[support])
    return float(np.max(rel)) / t


def etdrk4_order(seed: int, dts=(0.04, 0.02, 0.01), t_end: float = 2.0, refine: int = 8) -> float:
    """Global order of ETDRK4 on full KS1D, against a run with ``min(dts) / refine``."""
    model = ModelSpec(Variant.KS1D)
    grid = Grid(1, 8 * math.pi, 64)
    u0 = random_band(grid, seed, 8, 0.5)

    def solve(dt: float):
        stepping = SteppingConfig(dt=dt, t_end=t_end, sample_interval=t_end)
        st = make_stepper(model, grid, stepping)
        u = u0
        for n in range(stepping.total_steps):
            u = step(st, u, dt, t=n * dt)
        return u

    reference = solve(min(dts) / refine)
    errors = [(solve(dt) - reference).l2_norm() for dt in dts]
    slope, _ = np.polyfit(np.log(dts), np.log(errors), 1)
    return float(slope)


@suite("linear-exactness")
def linear_exactness(options: VerifyOptions) -> List[Check]:
    return [
        Check.at_most("etdrk4_linear_only", _linear_error(Scheme.ETDRK4, options.seed), LINEAR_TOLERANCE),
        Check.at_most("imex_cn_linear_only", _linear_error(Scheme.IMEX_CN, options.seed), LINEAR_TOLERANCE),
        Check.at_least("etdrk4_order", etdrk4_order(options.seed), MIN_ETDRK4_ORDER),
    ]


def _search(exponent: float, target: float, strict: bool) -> int:
    j = 0
    while not ((2.0 ** (exponent * j) > target) if strict else (2.0 ** (exponent * j) >= target)):
        j += 1
    return j


J0_TABLE = tuple(
    itertools.islice(
        zip(
            itertools.cycle((0.3, 1.0, 3.5, 12.0, 40.0, 250.0, 1e4)),
            itertools.cycle((0.05, 1.0, 7.0, 90.0, 2e3)),
            itertools.cycle((0.5, 1.0, 3.0, 10.0)),
            itertools.cycle((3.0, 4.0, 8.0, math.inf, 2.5, 16.0)),
        ),
        20,
    )
)


@suite("j0-rules")
def j0_rules(options: VerifyOptions) -> List[Check]:
    mismatches = 0
    for H, K_p, C, p in J0_TABLE:
        factor = 100.0 * max(1.0, C * C)
        if compute_j0(H, C) != _search(5.0, factor * H * H, strict=True):
            mismatches += 1
        exponent = 3.0 if math.isinf(p) else 3.0 - 1.0 / p
        if compute_j0_kp(K_p, p, C) != _search(exponent, factor * K_p, strict=False):
            mismatches += 1
    return [
        Check.at_most("table_mismatches", float(mismatches), 0),
        Check.holds("compute_j0(H=1,C=1) == 2", compute_j0(1.0, 1.0) == 2, float(compute_j0(1.0, 1.0))),
    ]


def _small_run(seed: int, output: str) -> Dict[str, object]:
    return {
        "grid.L": 8 * math.pi,
        "grid.N": 128,
        "stepping.t_end": 20.0,
        "initial_data.seed": seed,
        "checkpoint_every": 10,
        "output": output,
    }


@suite("reproducibility")
def reproducibility(options: VerifyOptions) -> List[Check]:
    checks: List[Check] = []
    with options.directory("reproducibility") as root:
        first = from_flat(_small_run(options.seed, str(root / "first")))
        second = from_flat(_small_run(options.seed, str(root / "second")))
        record = run_experiment(first)
        run_experiment(second)
        for name in (NORMS_CSV, TAILS_CSV, FITS_JSON):
            same = (root / "first" / name).read_bytes() == (root / "second" / name).read_bytes()
            checks.append(Check.holds(f"{name}_identical", same))
        configs = [read_config_yaml(root / run / CONFIG_YAML) for run in ("first", "second")]
        for cfg in configs:
            cfg.pop("output", None)
        checks.append(Check.holds(f"{CONFIG_YAML}_identical_but_output", configs[0] == configs[1]))

        u, t = load_checkpoint(root / "first" / FINAL_CHECKPOINT)
        exact = (
            t == record.t_final
            and np.array_equal(u.coefficients, record.final.coefficients)
            and encode_checkpoint(u, t) == (root / "first" / FINAL_CHECKPOINT).read_bytes()
        )
        checks.append(Check.holds("checkpoint_round_trip", exact))

        before = (root / "first" / FITS_JSON).read_bytes()
        analyze_run(root / "first")
        checks.append(Check.holds("analyze_fixed_point", before == (root / "first" / FITS_JSON).read_bytes()))
    return checks
