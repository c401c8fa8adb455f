"""Builders for synthetic norm histories."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
import pytest

from kstails.diagnostics.history import NormHistory, NormSample
from kstails.models import Variant


def make_history(
    t: Sequence[float],
    l2: Sequence[float],
    mean_minus_phi: Optional[Sequence[float]] = None,
    grad_sq: Optional[Sequence[float]] = None,
    variant: Optional[Variant] = Variant.KS2D,
    diverged_at: Optional[float] = None,
    lp: Optional[dict] = None,
    hs: Optional[dict] = None,
) -> NormHistory:
    n = len(t)
    m = np.zeros(n) if mean_minus_phi is None else np.asarray(mean_minus_phi, dtype=float)
    g = np.zeros(n) if grad_sq is None else np.asarray(grad_sq, dtype=float)
    lp = lp or {}
    hs = hs or {}
    samples = tuple(
        NormSample(
            t=float(t[i]),
            l2=float(l2[i]),
            lp={p: float(v[i]) for p, v in lp.items()},
            hs={s: float(v[i]) for s, v in hs.items()},
            mean_minus_phi=float(m[i]),
            grad_sq=float(g[i]),
            grad_sq_integral=0.0,
        )
        for i in range(n)
    )
    return NormHistory(samples, tuple(lp), tuple(hs), variant, diverged_at)


@pytest.fixture
def history_factory():
    return make_history
