"""High/low splitting of the Burgers tail flux ``\\int u_{>M} div(u^2) dx``."""

from __future__ import annotations

from dataclasses import dataclass

from kstails.models import ModelSpec, Variant, nonlinear_term
from kstails.spectral.field import SpectralField
from kstails.spectral.operators import (
    inner_product,
    partial_derivative,
    triple_product_integral,
)
from kstails.spectral.projection import high_pass, low_pass


@dataclass(frozen=True)
class TailFluxSplit:
    direct: float
    high_high: float
    high_low: float
    low_low: float
    regrouped: float

    @property
    def total(self) -> float:
        return self.high_high + self.high_low + self.low_low

    def as_dict(self) -> dict:
        return {
            "direct": self.direct,
            "high_high": self.high_high,
            "high_low": self.high_low,
            "low_low": self.low_low,
            "regrouped": self.regrouped,
        }


def tail_flux_split(u: SpectralField, M: float) -> TailFluxSplit:
    """Split with ``h = P_{>M} u`` and ``l = P_{<=M} u``.

    ``high_high`` is ``\\int h div(h^2)``, which vanishes; ``regrouped`` is
    ``\\int h^2 div(l) + 2 \\int h l div(l)``. Both the three-way sum and the
    regrouped form equal ``direct``, the dealiased inner product.
    """
    grid = u.grid
    h = high_pass(u, M)
    low = low_pass(u, M)
    burgers = ModelSpec(Variant.REG_BURGERS, s=2.0, d=grid.d)
    direct = -inner_product(h, nonlinear_term(burgers, u))

    high_high = high_low = low_low = regrouped = 0.0
    for axis in range(grid.d):
        dh = partial_derivative(h, axis)
        dl = partial_derivative(low, axis)
        # \int h d(q) = -\int dh q
        high_high -= triple_product_integral(dh, h, h)
        high_low -= 2.0 * triple_product_integral(dh, h, low)
        low_low -= triple_product_integral(dh, low, low)
        regrouped += triple_product_integral(h, h, dl) + 2.0 * triple_product_integral(h, low, dl)
    return TailFluxSplit(direct, high_high, high_low, low_low, regrouped)
