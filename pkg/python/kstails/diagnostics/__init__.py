"""Measurements taken on snapshots and on sampled histories.

Public Interfaces:
- Norm histories: `NormSample`, `NormHistory`, `NormRecorder`.
- Tails: `TailProfile`, `TailRecorder`, `tail_energy`, `dyadic_tail_profile`,
  `gevrey_fit`, `QuadraticFit`, `second_differences`.
- Recursion: `compute_j0`, `compute_j0_kp`, `tail_recursion_margin`,
  `tail_recursion_margin_kp`.
- 2D functionals: `blowup_monitor`, `Verdict`, `BlowupCaps`,
  `mean_drift_residual`, `gronwall_constant`.
- `sobolev_bound_ratios`, `tail_flux_split`.
"""

from kstails.diagnostics.blowup import (
    BlowupCaps,
    Verdict,
    VerdictKind,
    blowup_monitor,
    gronwall_constant,
    mean_drift_residual,
    sobolev_bound_ratios,
)
from kstails.diagnostics.flux import TailFluxSplit, tail_flux_split
from kstails.diagnostics.history import NormHistory, NormRecorder, NormSample, order_label
from kstails.diagnostics.recursion import (
    compute_j0,
    compute_j0_kp,
    tail_recursion_margin,
    tail_recursion_margin_kp,
)
from kstails.diagnostics.tails import (
    QuadraticFit,
    TailProfile,
    TailRecorder,
    default_noise_floor,
    dyadic_tail_profile,
    gevrey_fit,
    is_concave,
    second_differences,
    tail_energy,
)

__all__ = [
    "BlowupCaps",
    "Verdict",
    "VerdictKind",
    "blowup_monitor",
    "gronwall_constant",
    "mean_drift_residual",
    "sobolev_bound_ratios",
    "TailFluxSplit",
    "tail_flux_split",
    "NormHistory",
    "NormRecorder",
    "NormSample",
    "order_label",
    "compute_j0",
    "compute_j0_kp",
    "tail_recursion_margin",
    "tail_recursion_margin_kp",
    "QuadraticFit",
    "TailProfile",
    "TailRecorder",
    "default_noise_floor",
    "dyadic_tail_profile",
    "gevrey_fit",
    "is_concave",
    "second_differences",
    "tail_energy",
]
