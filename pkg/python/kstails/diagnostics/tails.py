"""Dyadic tail energies and the quadratic (Gevrey) fit of their logarithms."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from kstails.errors import ContractViolation, InsufficientDataError
from kstails.spectral.field import SpectralField

logger = logging.getLogger(__name__)

# binary64 roundoff plateau, relative to ||u||_{L^2}
NOISE_FLOOR_RELATIVE = 1e-12
MIN_FIT_POINTS = 3


def default_noise_floor(energy: float) -> float:
    """``(1e-12 ||u||)^2`` for a field of squared norm ``energy``."""
    return NOISE_FLOOR_RELATIVE * NOISE_FLOOR_RELATIVE * max(float(energy), 0.0)


@dataclass(frozen=True)
class TailProfile:
    """``I_j = ||P_{>M_j} u||^2`` with ``M_j = multiplier * 2^j * L`` at time ``t``.

    ``energy`` is ``||u||^2`` of the same snapshot.
    """

    t: float
    multiplier: float
    L: float
    entries: Tuple[Tuple[int, float], ...]
    energy: float = 0.0

    def __post_init__(self) -> None:
        if not self.multiplier > 0:
            raise ContractViolation(f"tail multiplier must be positive, got {self.multiplier!r}")
        object.__setattr__(
            self, "entries", tuple((int(j), float(e)) for j, e in self.entries)
        )

    @property
    def j(self) -> np.ndarray:
        return np.array([j for j, _ in self.entries], dtype=np.int64)

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for _, e in self.entries], dtype=np.float64)

    def threshold(self, j: int) -> float:
        return self.multiplier * 2.0**j * self.L

    def value(self, j: int) -> Optional[float]:
        for jj, e in self.entries:
            if jj == j:
                return e
        return None


def tail_energy(u: SpectralField, M: float) -> float:
    """``||P_{>M} u||^2`` by Plancherel."""
    mask = u.grid.index_norm > M
    return float(np.sum(np.abs(u.coefficients[mask]) ** 2))


def dyadic_tail_profile(
    u: SpectralField, c: float, j_max: int, t: float = 0.0
) -> TailProfile:
    """Tails above ``M_j = c 2^j L`` for ``j = 0..j_max``; thresholds at or past ``N/2`` are omitted."""
    if j_max < 0:
        raise ContractViolation(f"j_max must be >= 0, got {j_max!r}")
    grid = u.grid
    k = grid.index_norm.ravel()
    e = (np.abs(u.coefficients) ** 2).ravel()
    order = np.argsort(k, kind="stable")
    k_sorted = k[order]
    # tails[i] = sum of e over sorted positions >= i; nonincreasing by construction
    tails = np.concatenate([np.cumsum(e[order][::-1])[::-1], [0.0]])
    entries = []
    for j in range(j_max + 1):
        m_j = c * 2.0**j * grid.L
        if m_j >= grid.nyquist:
            break
        idx = int(np.searchsorted(k_sorted, m_j, side="right"))
        entries.append((j, float(tails[idx])))
    if len(entries) < j_max + 1:
        logger.debug(
            "tail profile at t=%g truncated to %d entries by the Nyquist index %d",
            t, len(entries), grid.nyquist,
        )
    return TailProfile(t=float(t), multiplier=float(c), L=grid.L, entries=tuple(entries), energy=u.energy())


@dataclass
class TailRecorder:
    """Observer that records a :class:`TailProfile` at every sample."""

    multiplier: float
    j_max: int
    profiles: List[TailProfile] = field(default_factory=list, init=False)

    def __call__(self, t: float, u: SpectralField) -> TailProfile:
        profile = dyadic_tail_profile(u, self.multiplier, self.j_max, t=t)
        self.profiles.append(profile)
        return profile


@dataclass(frozen=True)
class QuadraticFit:
    """``log2 I_j ~ a + b j - c j^2``; ``c > 0`` is the Gevrey signature."""

    a: float
    b: float
    c: float
    residual: float
    j_used: Tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "residual": self.residual,
            "j_used": list(self.j_used),
        }


def _usable(profile: TailProfile, noise_floor: Optional[float]) -> Tuple[np.ndarray, np.ndarray]:
    floor = default_noise_floor(profile.energy) if noise_floor is None else noise_floor
    if floor < 0:
        raise ContractViolation(f"noise floor must be >= 0, got {floor!r}")
    j, e = profile.j, profile.energies
    keep = e > floor
    return j[keep], e[keep]


def gevrey_fit(profile: TailProfile, noise_floor: Optional[float] = None) -> QuadraticFit:
    """Least squares of ``(j, log2 I_j)`` over entries above ``noise_floor``.

    ``noise_floor=None`` uses :func:`default_noise_floor` of the snapshot.
    """
    j, e = _usable(profile, noise_floor)
    if j.size < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"gevrey fit at t={profile.t:g} needs {MIN_FIT_POINTS} entries above the "
            f"noise floor, got {j.size}"
        )
    jf = j.astype(np.float64)
    design = np.column_stack([np.ones_like(jf), jf, -jf * jf])
    y = np.log2(e)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    residual = float(np.sqrt(np.mean((design @ coef - y) ** 2)))
    logger.debug(
        "gevrey fit t=%g j=%s -> a=%.6g b=%.6g c=%.6g rms=%.3g",
        profile.t, j.tolist(), coef[0], coef[1], coef[2], residual,
    )
    return QuadraticFit(
        a=float(coef[0]),
        b=float(coef[1]),
        c=float(coef[2]),
        residual=residual,
        j_used=tuple(int(x) for x in j),
    )


def second_differences(profile: TailProfile, noise_floor: Optional[float] = None) -> np.ndarray:
    """``log2 I_{j+1} - 2 log2 I_j + log2 I_{j-1}`` over consecutive entries above the floor."""
    j, e = _usable(profile, noise_floor)
    if j.size < 3:
        return np.zeros(0)
    y = np.log2(e)
    # only triples of consecutive j
    consecutive = (j[2:] - j[:-2]) == 2
    return (y[2:] - 2.0 * y[1:-1] + y[:-2])[consecutive]


def is_concave(profiles: Sequence[TailProfile], noise_floor: Optional[float] = None) -> bool:
    return all(bool(np.all(second_differences(p, noise_floor) < 0)) for p in profiles)
