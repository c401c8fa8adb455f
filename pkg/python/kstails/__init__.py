"""Pseudo-spectral solver and Littlewood-Paley tail diagnostics for the Kuramoto-Sivashinsky family.

Public Interfaces:
- `kstails.spectral`: grids, fields, transforms, projections and norms.
- `kstails.models`: the four equation variants and their right-hand sides.
- `kstails.integrator`: ETDRK4 / IMEX-CN stepping and the sampled time loop.
- `kstails.diagnostics`: norm histories, dyadic tails, recursion margins, blow-up.
- `kstails.experiments`: configs, runs, sweeps, run directories.
- `kstails.verify`: the named acceptance suites.

Environment
-----------
``KSTAILS_LOG_LEVEL``
    Level of the stderr handler installed by the ``kstails`` command (default ``WARNING``).
"""

from kstails.errors import KstailsError
from kstails.models import ModelSpec, Variant
from kstails.spectral import Grid, SpectralField

__version__ = "0.1.0"

__all__ = ["Grid", "KstailsError", "ModelSpec", "SpectralField", "Variant", "__version__"]
