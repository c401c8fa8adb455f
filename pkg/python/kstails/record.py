"""The outcome of one integration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Tuple

from kstails.diagnostics.blowup import Verdict
from kstails.diagnostics.history import NormHistory
from kstails.diagnostics.tails import TailProfile
from kstails.spectral.field import SpectralField


@dataclass(frozen=True)
class RunRecord:
    history: NormHistory
    tails: Tuple[TailProfile, ...]
    verdict: Verdict
    final: SpectralField
    t_final: float
    steps: int
    wall_seconds: float
    warnings: Tuple[str, ...] = ()
    # flat dotted echo of the configuration that produced the run
    config: Optional[Mapping[str, Any]] = field(default=None)

    @property
    def H(self) -> float:
        return self.history.H

    @property
    def diverged(self) -> bool:
        return self.verdict.kind.value == "diverged"
