"""Fixed-step integration settings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from kstails.errors import ContractViolation


class Scheme(str, Enum):
    ETDRK4 = "ETDRK4"
    IMEX_CN = "IMEX-CN"


@dataclass(frozen=True)
class SteppingConfig:
    scheme: Scheme = Scheme.ETDRK4
    dt: float = 0.05
    t_end: float = 200.0
    sample_interval: float = 0.5
    max_amplitude: float = 1e6
    min_dt: float = 1e-10

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "scheme", Scheme(self.scheme))
        except ValueError as exc:
            names = ", ".join(s.value for s in Scheme)
            raise ContractViolation(f"unknown scheme {self.scheme!r} (expected one of {names})") from exc
        for name in ("dt", "t_end", "sample_interval", "max_amplitude", "min_dt"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ContractViolation(f"stepping.{name} must be a positive number, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.dt < self.min_dt:
            raise ContractViolation(f"dt={self.dt!r} is below min_dt={self.min_dt!r}")
        if not self.dt <= self.sample_interval <= self.t_end:
            raise ContractViolation(
                "need dt <= sample_interval <= t_end, got "
                f"dt={self.dt!r}, sample_interval={self.sample_interval!r}, t_end={self.t_end!r}"
            )

    @property
    def steps_per_sample(self) -> int:
        return max(1, int(round(self.sample_interval / self.dt)))

    @property
    def total_steps(self) -> int:
        return int(round(self.t_end / self.dt))
