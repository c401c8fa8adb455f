"""Exception hierarchy shared by every kstails layer.

A divergence *verdict* (the amplitude cap was crossed) is recorded data and is
never raised; only non-finite states raise :class:`DivergenceError`.
"""

from __future__ import annotations

from typing import Optional


class KstailsError(Exception):
    """Root of all errors raised by this package."""


class ContractViolation(KstailsError, ValueError):
    """A documented precondition did not hold."""


class InvalidFieldError(KstailsError, ValueError):
    """Spectral coefficients do not describe a real-valued field."""


class DivergenceError(KstailsError, ArithmeticError):
    """The integrated state became non-finite."""

    def __init__(self, message: str, t: float) -> None:
        super().__init__(f"{message} (t={t:.17g})")
        self.t = t


class InsufficientDataError(KstailsError, ValueError):
    """Too few usable samples for a fit or a finite difference."""


class CheckpointFormatError(KstailsError, ValueError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class ConfigError(KstailsError, ValueError):
    """Bad experiment configuration: unknown key, wrong type, missing file."""


class RunDirectoryError(ConfigError):
    """A run directory is missing files or holds unparsable CSVs."""


class SweepError(KstailsError, RuntimeError):
    def __init__(self, message: str, L: Optional[float] = None) -> None:
        super().__init__(message if L is None else f"{message} (member L={L:.17g})")
        self.L = L
