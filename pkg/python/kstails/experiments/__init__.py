"""Reproducible runs, sweeps and the files they leave behind.

Public Interfaces:
- `ExperimentConfig`, `load_config`, `from_flat`, `to_flat`, `with_overrides`.
- `make_initial_field`: seeded initial data.
- `run_experiment`, `emit_run`: single runs and their run directories.
- `sweep_scaling`, `fit_power_law`, `ScalingFit`, `resolution_check`.
- `save_checkpoint` / `load_checkpoint`.
- `emit_csv`, `analyze_run`, `compute_fits`.
"""

from kstails.experiments.analysis import analyze_run, compute_fits
from kstails.experiments.checkpoint import load_checkpoint, save_checkpoint
from kstails.experiments.config import (
    DiagnosticsConfig,
    ExperimentConfig,
    InitialDataConfig,
    InitialKind,
    SweepConfig,
    defaults,
    defaults_table,
    from_flat,
    load_config,
    to_flat,
    with_overrides,
)
from kstails.experiments.initial_data import make_initial_field
from kstails.experiments.output import emit_csv
from kstails.experiments.runner import emit_run, run_experiment
from kstails.experiments.sweep import (
    ResolutionCheck,
    ScalingFit,
    analyze_sweep,
    fit_power_law,
    is_sweep_directory,
    parse_observable,
    resolution_check,
    run_members,
    scaling_fit,
    sweep_scaling,
)

__all__ = [
    "analyze_run",
    "compute_fits",
    "load_checkpoint",
    "save_checkpoint",
    "DiagnosticsConfig",
    "ExperimentConfig",
    "InitialDataConfig",
    "InitialKind",
    "SweepConfig",
    "defaults",
    "defaults_table",
    "from_flat",
    "load_config",
    "to_flat",
    "with_overrides",
    "make_initial_field",
    "emit_csv",
    "emit_run",
    "run_experiment",
    "ResolutionCheck",
    "ScalingFit",
    "analyze_sweep",
    "fit_power_law",
    "is_sweep_directory",
    "parse_observable",
    "resolution_check",
    "run_members",
    "scaling_fit",
    "sweep_scaling",
]
