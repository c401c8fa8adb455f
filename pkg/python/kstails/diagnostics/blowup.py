"""Blow-up bookkeeping for the 2D equation and the norm-history functionals.

The classical solution persists while ``sup_t ||phi||_{L^2}`` and
``\\int_0^t ||grad phi||^2`` stay finite; both are attached to every verdict.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

import numpy as np

from kstails.diagnostics.history import NormHistory, order_label
from kstails.errors import ContractViolation, InsufficientDataError
from kstails.models import Variant

logger = logging.getLogger(__name__)


class VerdictKind(str, Enum):
    BOUNDED = "bounded"
    GROWING = "growing"
    DIVERGED = "diverged"


@dataclass(frozen=True)
class BlowupCaps:
    l2_cap: float = 1e6
    # ln ||phi|| slope over the second half above which a run is "growing"
    growth_rate: float = 0.5

    def __post_init__(self) -> None:
        if not self.l2_cap > 0:
            raise ContractViolation(f"l2_cap must be positive, got {self.l2_cap!r}")


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    sup_l2: float
    grad_sq_integral: float
    t_star: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "t_star": self.t_star,
            "sup_l2": self.sup_l2,
            "grad_sq_integral": self.grad_sq_integral,
        }


def _crossing_time(t: np.ndarray, l2: np.ndarray, cap: float) -> Optional[float]:
    above = np.nonzero(l2 > cap)[0]
    if above.size == 0:
        return None
    i = int(above[0])
    if i == 0 or l2[i - 1] <= 0:
        return float(t[i])
    # log-linear interpolation is exact for exponential growth
    lo, hi = math.log(l2[i - 1]), math.log(l2[i])
    frac = (math.log(cap) - lo) / (hi - lo)
    return float(t[i - 1] + frac * (t[i] - t[i - 1]))


def _growth_slope(h: NormHistory) -> Optional[float]:
    half = h.window(0.5)
    t, l2 = half.times, half.l2
    keep = l2 > 0
    if np.count_nonzero(keep) < 2 or np.ptp(t[keep]) == 0:
        return None
    slope, _ = np.polyfit(t[keep], np.log(l2[keep]), 1)
    return float(slope)


def blowup_monitor(h: NormHistory, caps: BlowupCaps = BlowupCaps()) -> Verdict:
    """``diverged`` on a cap crossing or a recorded divergence, ``growing`` on sustained growth."""
    if len(h) == 0:
        raise ContractViolation("blowup_monitor needs a nonempty history")
    t, l2 = h.times, h.l2
    sup_l2 = float(np.max(l2))
    integral = float(h.grad_sq_integral[-1])

    t_star = _crossing_time(t, l2, caps.l2_cap)
    if t_star is None and h.diverged_at is not None:
        t_star = float(h.diverged_at)
    if t_star is not None:
        logger.info("diverged: ||phi|| crossed %.3g at t*=%.6g", caps.l2_cap, t_star)
        return Verdict(VerdictKind.DIVERGED, sup_l2, integral, t_star)

    slope = _growth_slope(h)
    if slope is not None and slope > caps.growth_rate:
        logger.info("growing: ln||phi|| slope %.3g over the second half", slope)
        return Verdict(VerdictKind.GROWING, sup_l2, integral)
    return Verdict(VerdictKind.BOUNDED, sup_l2, integral)


def _require_ks2d(h: NormHistory, what: str) -> None:
    if h.variant is not Variant.KS2D:
        name = h.variant.value if h.variant is not None else "an untagged history"
        raise ContractViolation(f"{what} is defined for KS2D, got {name}")


def mean_drift_residual(h: NormHistory) -> float:
    """``max |d/dt \\int(-phi) - ||grad phi||^2 / 2|`` over interior samples (centered differences)."""
    _require_ks2d(h, "mean_drift_residual")
    if len(h) < 3:
        raise InsufficientDataError(f"mean drift needs at least 3 samples, got {len(h)}")
    t, m, g = h.times, h.mean_minus_phi, h.grad_sq
    drift = (m[2:] - m[:-2]) / (t[2:] - t[:-2])
    return float(np.max(np.abs(drift - 0.5 * g[1:-1])))


def gronwall_constant(h: NormHistory) -> float:
    """Smallest ``C`` with ``||phi||^2 + 1 <= (||phi_0||^2 + 1) exp(C \\int(phi_0 - phi))`` on the samples.

    Only samples with a positive exponent integral count; ``nan`` when there are none.
    """
    _require_ks2d(h, "gronwall_constant")
    if len(h) == 0:
        raise InsufficientDataError("gronwall_constant needs at least one sample")
    l2, m = h.l2, h.mean_minus_phi
    drift = m - m[0]
    growth = np.log1p(l2 * l2) - math.log1p(l2[0] * l2[0])
    usable = drift > 0
    if not np.any(usable):
        return math.nan
    return float(np.max(growth[usable] / drift[usable]))


def sobolev_bound_ratios(
    h: NormHistory, s: float, p: float, fraction: float = 0.5
) -> Dict[str, float]:
    """Measured ``sup ||u||_{H^s}`` against the two attractor-radius forms.

    ``H_form`` divides by ``H^{2s/5 + 1}``, ``Kp_form`` by ``K_p^{s/(3 - 1/p)} H``;
    suprema run over the window selected by ``fraction``.
    """
    late = h.window(fraction)
    if len(late) == 0:
        raise InsufficientDataError("sobolev_bound_ratios needs at least one sample")
    sup_hs = float(np.max(late.hs(s)))
    H = h.H
    K_p = float(np.max(h.lp(p)))
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    h_form = H ** (2.0 * s / 5.0 + 1.0)
    kp_form = K_p ** (s / (3.0 - inv_p)) * H
    return {
        f"H_form_s{order_label(s)}": sup_hs / h_form if h_form > 0 else math.nan,
        f"Kp_form_s{order_label(s)}_p{order_label(p)}": sup_hs / kp_form if kp_form > 0 else math.nan,
    }
