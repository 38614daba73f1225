import logging
import math
import numbers

from freemax._app_config import FreeMaxAppConfig
from freemax.objects.distributions.catalog_entry import CatalogEntry
from freemax.objects.distributions.distribution_spec import DistributionSpec
from freemax.objects.distributions.regime_tag import RegimeTag
from freemax.objects.norming.norming_pair import NormingPair
from freemax.services.distribution_service import DistributionService

logger = logging.getLogger(__name__)


class NormingService:

    @staticmethod
    def norming_frechet(spec: DistributionSpec, n: int) -> NormingPair:
        n = NormingService._checked(n)
        if spec.has_finite_endpoint:
            raise ValueError(f"Frechet norming needs an unbounded right endpoint; {spec.name} has omega = {spec.omega}")

        target, residual = NormingService._target(spec, n)
        if not target > 0:
            raise ValueError(f"a_n = {target} is not positive for {spec.name} at n={n}; n is too small")

        return NormingService._pair(spec, a=target, b=0.0, n=n, residual=residual, target=target, regime=RegimeTag.Frechet)

    @staticmethod
    def norming_weibull(spec: DistributionSpec, n: int) -> NormingPair:
        n = NormingService._checked(n)
        if not spec.has_finite_endpoint:
            raise ValueError(f"Weibull norming needs a finite right endpoint; {spec.name} has omega = inf")

        target, residual = NormingService._target(spec, n)
        a = spec.omega - target
        if not a > 0:
            raise ValueError(f"a_n = {a} is not positive for {spec.name} at n={n}")

        return NormingService._pair(spec, a=a, b=spec.omega, n=n, residual=residual, target=target, regime=RegimeTag.Weibull)

    @staticmethod
    def norming_gumbel(spec: DistributionSpec, n: int) -> NormingPair:
        n = NormingService._checked(n)
        target, residual = NormingService._target(spec, n)

        density = float(DistributionService.pdf_of(spec, target))
        if not (math.isfinite(density) and density > 0):
            raise ValueError(f"F'(b_n) = {density} at b_n = {target} for {spec.name}; the von Mises setup needs a positive density")

        # a_n = f(b_n) = F(b_n) / (n F'(b_n))
        a = float(spec.cdf(target)) / (n * density)
        return NormingService._pair(spec, a=a, b=target, n=n, residual=residual, target=target, regime=RegimeTag.Gumbel)

    @staticmethod
    def norming(entry: CatalogEntry, n: int) -> NormingPair:
        if entry.regime.tag == RegimeTag.Frechet:
            return NormingService.norming_frechet(entry.spec, n)
        if entry.regime.tag == RegimeTag.Weibull:
            return NormingService.norming_weibull(entry.spec, n)
        return NormingService.norming_gumbel(entry.spec, n)

    @staticmethod
    def _checked(n: int) -> int:
        if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1 or n > FreeMaxAppConfig.max_n:
            raise ValueError(f"n must be an integer in [1, {FreeMaxAppConfig.max_n}], got {n!r}")
        return int(n)

    @staticmethod
    def _target(spec: DistributionSpec, n: int) -> tuple[float, float]:
        tail = -math.expm1(-1.0 / n)
        target = DistributionService.upper_quantile_of(spec, tail)
        residual = abs(float(DistributionService.survival(spec, target)) - tail)
        return target, residual

    @staticmethod
    def _pair(spec: DistributionSpec, a: float, b: float, n: int, residual: float, target: float, regime: RegimeTag) -> NormingPair:
        unique = DistributionService.is_strictly_increasing_at(spec, target)
        if not unique:
            logger.warning("F of %s is flat at the norming target %r (n=%d); using the infimum of the solutions", spec.name, target, n)

        pair = NormingPair(a=a, b=b, n=n, residual=residual, target=target, regime=regime, unique=unique)
        logger.debug("Norming of %s at n=%d: a=%r b=%r residual=%.3e", spec.name, n, a, b, residual)
        return pair
