"""Suite registry, checks and the pass/fail table printed by ``kstails verify``."""

from __future__ import annotations

import contextlib
import logging
import math
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from kstails.errors import ConfigError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    name: str
    measured: Union[float, str]
    required: str
    passed: bool

    @classmethod
    def at_most(cls, name: str, measured: float, bound: float) -> "Check":
        # nan never passes
        return cls(name, measured, f"<= {bound:g}", bool(measured <= bound))

    @classmethod
    def at_least(cls, name: str, measured: float, bound: float) -> "Check":
        return cls(name, measured, f">= {bound:g}", bool(measured >= bound))

    @classmethod
    def within(cls, name: str, measured: float, lo: float, hi: float) -> "Check":
        return cls(name, measured, f"in [{lo:g}, {hi:g}]", bool(lo <= measured <= hi))

    @classmethod
    def holds(cls, name: str, passed: bool, measured: Union[float, str] = "") -> "Check":
        return cls(name, measured if measured != "" else ("yes" if passed else "no"), "yes", bool(passed))

    @classmethod
    def failed(cls, name: str, reason: str) -> "Check":
        return cls(name, reason, "no error", False)


@dataclass(frozen=True)
class VerifyOptions:
    seed: int = 0
    # artifacts go under workdir/<suite>; None means a temporary directory
    workdir: Optional[Path] = None

    @contextlib.contextmanager
    def directory(self, suite: str) -> Iterator[Path]:
        if self.workdir is not None:
            path = Path(self.workdir) / suite
            path.mkdir(parents=True, exist_ok=True)
            yield path
            return
        with tempfile.TemporaryDirectory(prefix=f"kstails-{suite}-") as tmp:
            yield Path(tmp)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: Tuple[Check, ...]
    seconds: float

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)


SuiteFn = Callable[[VerifyOptions], List[Check]]

SUITES: Dict[str, SuiteFn] = {}

# report order of `kstails verify`
SUITE_ORDER = (
    "spectral-identities",
    "linear-exactness",
    "burgers-monotonicity",
    "burgers-gevrey",
    "ks1d-gevrey",
    "scaling-bounds",
    "destabilized-ks",
    "ks2d-blowup",
    "j0-rules",
    "reproducibility",
)


def suite(name: str) -> Callable[[SuiteFn], SuiteFn]:
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        return fn

    return register


def run_suite(name: str, options: VerifyOptions = VerifyOptions()) -> SuiteResult:
    if name not in SUITES:
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    logger.info("suite %s: starting", name)
    started = time.perf_counter()
    checks = SUITES[name](options)
    seconds = time.perf_counter() - started
    result = SuiteResult(name, tuple(checks), seconds)
    logger.info("suite %s: %s in %.1fs", name, "pass" if result.passed else "FAIL", seconds)
    return result


def run_suites(names: Optional[Sequence[str]] = None, options: VerifyOptions = VerifyOptions()) -> List[SuiteResult]:
    return [run_suite(n, options) for n in (names or SUITE_ORDER)]


def _cell(value: Union[float, str]) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return f"{value:.6g}"


def format_table(results: Sequence[SuiteResult]) -> str:
    rows = [("suite", "check", "measured", "required", "status")]
    for r in results:
        for c in r.checks:
            rows.append((r.name, c.name, _cell(c.measured), c.required, "pass" if c.passed else "FAIL"))
        rows.append((r.name, "", "", f"{r.seconds:.1f}s", "PASS" if r.passed else "FAIL"))
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
