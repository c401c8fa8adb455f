"""The ``j_0`` selection rules and the empirical tail-recursion constants.

The recursion ``I_j' + 2^{4j} I_j <= C 2^{-j} H^2 I_{j-1}`` holds for
``j > j_0``; :func:`tail_recursion_margin` reports the smallest ``C`` a run
needs, it never asserts one.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, Sequence

import numpy as np

from kstails.diagnostics.tails import TailProfile
from kstails.errors import ContractViolation, InsufficientDataError


def _smallest_j(exponent: float, target: float, strict: bool) -> int:
    if not math.isfinite(target):
        raise ContractViolation(f"j0 rule target must be finite, got {target!r}")
    if target <= 0:
        return 0
    # start just below the real-valued root and step up
    j = max(0, int(math.floor(math.log2(target) / exponent)) - 1)
    while True:
        value = 2.0 ** (exponent * j)
        if (value > target) if strict else (value >= target):
            return j
        j += 1


def compute_j0(H: float, C: float = 1.0) -> int:
    """Smallest ``j_0 >= 0`` with ``2^{5 j_0} > 100 max(1, C^2) H^2``."""
    return _smallest_j(5.0, 100.0 * max(1.0, C * C) * H * H, strict=True)


def compute_j0_kp(K_p: float, p: float, C: float = 1.0) -> int:
    """Smallest ``j_0 >= 0`` with ``2^{j_0 (3 - 1/p)} >= 100 max(1, C^2) K_p``; needs ``p > 2``."""
    if not p > 2:
        raise ContractViolation(f"the L^p rule needs p > 2, got {p!r}")
    exponent = 3.0 if math.isinf(p) else 3.0 - 1.0 / p
    return _smallest_j(exponent, 100.0 * max(1.0, C * C) * K_p, strict=False)


def _series(history: Sequence[TailProfile]) -> Dict[int, np.ndarray]:
    """``j -> I_j(t_i)`` for every j present in all profiles."""
    common = set(history[0].j.tolist())
    for p in history[1:]:
        common &= set(p.j.tolist())
    return {j: np.array([p.value(j) for p in history], dtype=np.float64) for j in sorted(common)}


def _margin(
    history: Sequence[TailProfile],
    j0: int,
    forcing: Callable[[int], float],
) -> Dict[int, float]:
    if len(history) < 3:
        raise InsufficientDataError(
            f"tail recursion needs at least 3 time samples, got {len(history)}"
        )
    first = history[0]
    for p in history[1:]:
        if p.multiplier != first.multiplier or p.L != first.L:
            raise ContractViolation("tail profiles in one history must share thresholds")
    t = np.array([p.t for p in history], dtype=np.float64)
    if np.any(np.diff(t) <= 0):
        raise ContractViolation("tail profile times must be strictly increasing")

    series = _series(history)
    margins: Dict[int, float] = {}
    for j, I_j in series.items():
        if j <= j0 or (j - 1) not in series:
            continue
        I_prev = series[j - 1][1:-1]
        dI = (I_j[2:] - I_j[:-2]) / (t[2:] - t[:-2])
        lhs = dI + 2.0 ** (4 * j) * I_j[1:-1]
        usable = I_prev > 0
        if not np.any(usable):
            continue
        c_hat = lhs[usable] / (forcing(j) * I_prev[usable])
        margins[j] = max(0.0, float(np.max(c_hat)))
    return margins


def tail_recursion_margin(
    history: Sequence[TailProfile], H: float, j0: int
) -> Dict[int, float]:
    """``j -> sup_t (I_j' + 2^{4j} I_j) 2^j / (H^2 I_{j-1})`` for ``j > j0``, clamped at 0.

    ``I_j'`` is a centered difference, so the first and last samples only
    serve as stencil points. Samples with ``I_{j-1} == 0`` are skipped.
    """
    if not H > 0:
        raise ContractViolation(f"H must be positive, got {H!r}")
    return _margin(history, j0, lambda j: 2.0 ** (-j) * H * H)


def tail_recursion_margin_kp(
    history: Sequence[TailProfile], K_p: float, p: float, j0: int
) -> Dict[int, float]:
    """The L^p form: forcing ``2^{j(-2 + 2/p)} K_p^2 I_{j-1}``."""
    if not K_p > 0:
        raise ContractViolation(f"K_p must be positive, got {K_p!r}")
    if not p > 2:
        raise ContractViolation(f"the L^p recursion needs p > 2, got {p!r}")
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    return _margin(history, j0, lambda j: 2.0 ** (j * (-2.0 + 2.0 * inv_p)) * K_p * K_p)
