import math

from freemax.objects.distributions.regime import Regime
from freemax.objects.distributions.regime_tag import RegimeTag


class RegimeResolver:
    _Domain_Map = {
        RegimeTag.Frechet: (1.0, math.inf),
        RegimeTag.Weibull: (-1.0, 0.0),
        RegimeTag.Gumbel: (0.0, math.inf),
    }

    @staticmethod
    def theorem_domain(regime: Regime) -> tuple[float, float]:
        if regime.tag not in RegimeResolver._Domain_Map:
            raise ValueError(f"Unknown regime: {regime.tag}")

        return RegimeResolver._Domain_Map[regime.tag]
