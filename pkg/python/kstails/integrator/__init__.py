"""Stiff time integration of ``a_k' = lambda(k) a_k + N_k(a)``.

Public Interfaces:
- `SteppingConfig`, `Scheme`: fixed-step settings.
- `make_stepper`, `Stepper`, `phi_weights`: precomputed per-mode propagators.
- `step`: one ETDRK4 or IMEX-CN update.
- `integrate`: the sampled time loop returning a `RunRecord`.
"""

from kstails.integrator.config import Scheme, SteppingConfig
from kstails.integrator.driver import cfl_advisory, integrate
from kstails.integrator.stepper import Stepper, make_stepper, phi_weights, step

__all__ = [
    "Scheme",
    "SteppingConfig",
    "Stepper",
    "make_stepper",
    "phi_weights",
    "step",
    "integrate",
    "cfl_advisory",
]
