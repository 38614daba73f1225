import math
from typing import Any, Sequence

import numpy as np
from scipy import special

from freemax._vectorized import vectorized
from freemax.objects.distributions.catalog_entry import CatalogEntry
from freemax.objects.distributions.distribution_spec import DistributionSpec
from freemax.objects.distributions.regime import Regime
from freemax.resolvers.distribution_name_resolver import DistributionNameResolver

_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_SQRT_HALF_PI = math.sqrt(0.5 * math.pi)


def _zero_envelope(x: np.ndarray) -> np.ndarray:
    return np.zeros_like(x)


def _endpoint_ratio(u: np.ndarray) -> np.ndarray:
    # u / ((1 - u)(-log(1 - u))), which tends to 1 as u -> 0
    safe_u = np.where(u > 0, u, 0.5)
    return np.where(u > 0, safe_u / ((1.0 - safe_u) * -np.log1p(-safe_u)), 1.0)


class CatalogFactory:

    @staticmethod
    def create(name: str, params: Sequence[float] = ()) -> CatalogEntry:
        canonical_name = DistributionNameResolver.resolve(name)
        expected = DistributionNameResolver.parameter_names(canonical_name)
        params = tuple(float(param) for param in params)

        if len(params) != len(expected):
            raise ValueError(f"{canonical_name} takes parameters {list(expected)}, got {len(params)} values")
        for param in params:
            if not math.isfinite(param):
                raise ValueError(f"Parameters of {canonical_name} must be finite, got {params}")

        builder = getattr(CatalogFactory, f"_{canonical_name}")
        return builder(*params)

    @staticmethod
    def names() -> list[str]:
        return DistributionNameResolver.canonical_names()

    @staticmethod
    def _frechet(alpha: float) -> CatalogEntry:
        if not alpha > 0:
            raise ValueError(f"frechet requires alpha > 0, got {alpha}")

        def power(x: np.ndarray) -> np.ndarray:
            return np.where(x > 0, np.where(x > 0, x, 1.0) ** -alpha, np.inf)

        spec = DistributionSpec(
            name=f"frechet(alpha={alpha:g})",
            cdf=vectorized(lambda x: np.exp(-power(x))),
            sf=vectorized(lambda x: -np.expm1(-power(x))),
            pdf=vectorized(lambda x: np.where(x > 0, alpha * power(x) / np.where(x > 0, x, 1.0) * np.exp(-power(x)), 0.0)),
            quantile=vectorized(lambda p: (-np.log(p)) ** (-1.0 / alpha)),
            isf=vectorized(lambda q: (-np.log1p(-q)) ** (-1.0 / alpha)),
            omega=math.inf,
            support_left=0.0
        )

        return CatalogEntry(spec=spec, regime=Regime.frechet(alpha), envelope=vectorized(_zero_envelope), params=(alpha,))

    @staticmethod
    def _log_logistic(alpha: float) -> CatalogEntry:
        if not alpha > 0:
            raise ValueError(f"log_logistic requires alpha > 0, got {alpha}")

        def positive(x: np.ndarray) -> np.ndarray:
            return np.where(x > 0, x, 1.0)

        def sf(x: np.ndarray) -> np.ndarray:
            return np.where(x > 0, 1.0 / (1.0 + positive(x) ** alpha), 1.0)

        def pdf(x: np.ndarray) -> np.ndarray:
            power = positive(x) ** alpha
            return np.where(x > 0, alpha * power / positive(x) / (1.0 + power) ** 2, 0.0)

        spec = DistributionSpec(
            name=f"log_logistic(alpha={alpha:g})",
            cdf=vectorized(lambda x: np.where(x > 0, 1.0 / (1.0 + positive(x) ** -alpha), 0.0)),
            sf=vectorized(sf),
            pdf=vectorized(pdf),
            quantile=vectorized(lambda p: (p / (1.0 - p)) ** (1.0 / alpha)),
            isf=vectorized(lambda q: ((1.0 - q) / q) ** (1.0 / alpha)),
            omega=math.inf,
            support_left=0.0
        )
        envelope = vectorized(lambda x: np.where(x > 0, alpha / (1.0 + positive(x) ** alpha), alpha))

        return CatalogEntry(spec=spec, regime=Regime.frechet(alpha), envelope=envelope, params=(alpha,))

    @staticmethod
    def _cauchy() -> CatalogEntry:
        def sf(x: np.ndarray) -> np.ndarray:
            return np.arctan2(1.0, x) / math.pi

        def envelope(x: np.ndarray) -> np.ndarray:
            neg_log_cdf = -np.log1p(-sf(x))
            value = 1.0 - x / (math.pi * (1.0 + x * x) * neg_log_cdf)
            return np.where(x > 0, value, np.inf)

        spec = DistributionSpec(
            name="cauchy",
            cdf=vectorized(lambda x: np.arctan2(1.0, -x) / math.pi),
            sf=vectorized(sf),
            pdf=vectorized(lambda x: 1.0 / (math.pi * (1.0 + x * x))),
            pdf2=vectorized(lambda x: -2.0 * x / (math.pi * (1.0 + x * x) ** 2)),
            quantile=vectorized(lambda p: np.tan(math.pi * (p - 0.5))),
            isf=vectorized(lambda q: 1.0 / np.tan(math.pi * q)),
            omega=math.inf,
            support_left=-math.inf
        )

        return CatalogEntry(spec=spec, regime=Regime.frechet(1.0), envelope=vectorized(envelope))

    @staticmethod
    def _weibull(alpha: float) -> CatalogEntry:
        if not alpha < 0:
            raise ValueError(f"weibull requires alpha < 0, got {alpha}")

        def distance(x: np.ndarray) -> np.ndarray:
            return np.where(x < 0, -x, 1.0)

        def power(x: np.ndarray) -> np.ndarray:
            return np.where(x < 0, distance(x) ** -alpha, 0.0)

        def pdf(x: np.ndarray) -> np.ndarray:
            return np.where(x < 0, -alpha * distance(x) ** (-alpha - 1.0) * np.exp(-power(x)), 0.0)

        spec = DistributionSpec(
            name=f"weibull(alpha={alpha:g})",
            cdf=vectorized(lambda x: np.exp(-power(x))),
            sf=vectorized(lambda x: -np.expm1(-power(x))),
            pdf=vectorized(pdf),
            quantile=vectorized(lambda p: -((-np.log(p)) ** (-1.0 / alpha))),
            isf=vectorized(lambda q: -((-np.log1p(-q)) ** (-1.0 / alpha))),
            omega=0.0,
            support_left=-math.inf
        )

        return CatalogEntry(spec=spec, regime=Regime.weibull(alpha), envelope=vectorized(_zero_envelope), params=(alpha,))

    @staticmethod
    def _endpoint_power(k: float, alpha: float, omega: float) -> CatalogEntry:
        if not k > 0:
            raise ValueError(f"endpoint_power requires K > 0, got {k}")
        if not alpha < -1:
            raise ValueError(f"endpoint_power requires alpha < -1, got {alpha}")

        left = omega - k ** (1.0 / alpha)

        def interior(x: np.ndarray) -> np.ndarray:
            return (x > left) & (x < omega)

        def distance(x: np.ndarray) -> np.ndarray:
            return np.where(interior(x), omega - x, 1.0)

        def sf(x: np.ndarray) -> np.ndarray:
            return np.where(interior(x), k * distance(x) ** -alpha, np.where(x <= left, 1.0, 0.0))

        def envelope(x: np.ndarray) -> np.ndarray:
            u = np.where(interior(x), k * distance(x) ** -alpha, 0.5)
            value = np.abs(-alpha * (_endpoint_ratio(u) - 1.0))
            return np.where(interior(x), value, np.where(x <= left, np.inf, 0.0))

        spec = DistributionSpec(
            name=f"endpoint_power(K={k:g}, alpha={alpha:g}, omega={omega:g})",
            cdf=vectorized(lambda x: 1.0 - sf(x)),
            sf=vectorized(sf),
            pdf=vectorized(lambda x: np.where(interior(x), -alpha * k * distance(x) ** (-alpha - 1.0), 0.0)),
            pdf2=vectorized(lambda x: np.where(interior(x), alpha * k * (-alpha - 1.0) * distance(x) ** (-alpha - 2.0), 0.0)),
            quantile=vectorized(lambda p: omega - ((1.0 - p) / k) ** (-1.0 / alpha)),
            isf=vectorized(lambda q: omega - (q / k) ** (-1.0 / alpha)),
            omega=omega,
            support_left=left
        )

        return CatalogEntry(spec=spec, regime=Regime.weibull(alpha), envelope=vectorized(envelope), params=(k, alpha, omega))

    @staticmethod
    def _uniform01() -> CatalogEntry:
        def envelope(x: np.ndarray) -> np.ndarray:
            u = np.where((x > 0) & (x < 1), 1.0 - x, 0.5)
            return np.where((x > 0) & (x < 1), _endpoint_ratio(u) - 1.0, np.where(x <= 0, np.inf, 0.0))

        spec = DistributionSpec(
            name="uniform01",
            cdf=vectorized(lambda x: np.clip(x, 0.0, 1.0)),
            sf=vectorized(lambda x: np.clip(1.0 - x, 0.0, 1.0)),
            pdf=vectorized(lambda x: np.where((x > 0) & (x < 1), 1.0, 0.0)),
            pdf2=vectorized(np.zeros_like),
            quantile=vectorized(lambda p: p),
            isf=vectorized(lambda q: 1.0 - q),
            omega=1.0,
            support_left=0.0
        )

        return CatalogEntry(spec=spec, regime=Regime.weibull(-1.0), envelope=vectorized(envelope))

    @staticmethod
    def _gumbel() -> CatalogEntry:
        spec = DistributionSpec(
            name="gumbel",
            cdf=vectorized(lambda x: np.exp(-np.exp(-x))),
            sf=vectorized(lambda x: -np.expm1(-np.exp(-x))),
            pdf=vectorized(lambda x: np.exp(-x - np.exp(-x))),
            pdf2=vectorized(lambda x: np.exp(-2.0 * x - np.exp(-x)) - np.exp(-x - np.exp(-x))),
            quantile=vectorized(lambda p: -np.log(-np.log(p))),
            isf=vectorized(lambda q: -np.log(-np.log1p(-q))),
            omega=math.inf,
            support_left=-math.inf
        )

        return CatalogEntry(spec=spec, regime=Regime.gumbel(), envelope=vectorized(_zero_envelope))

    @staticmethod
    def _stretched_gumbel(alpha: float) -> CatalogEntry:
        if not alpha > 0 or alpha == 1:
            raise ValueError(f"stretched_gumbel requires alpha > 0 and alpha != 1, got {alpha}")

        def positive(x: np.ndarray) -> np.ndarray:
            return np.where(x > 0, x, 1.0)

        def power(x: np.ndarray) -> np.ndarray:
            return np.where(x >= 0, np.where(x >= 0, x, 0.0) ** alpha, -np.inf)

        def pdf(x: np.ndarray) -> np.ndarray:
            t = power(x)
            return np.where(x > 0, alpha * positive(x) ** (alpha - 1.0) * np.exp(-t - np.exp(-t)), 0.0)

        def pdf2(x: np.ndarray) -> np.ndarray:
            t = power(x)
            base = np.exp(-t - np.exp(-t))
            slope = alpha * positive(x) ** (alpha - 1.0)
            curvature = alpha * (alpha - 1.0) * positive(x) ** (alpha - 2.0)
            return np.where(x > 0, base * (slope * slope * np.expm1(-t) + curvature), 0.0)

        floor = math.exp(-1.0)
        spec = DistributionSpec(
            name=f"stretched_gumbel(alpha={alpha:g})",
            cdf=vectorized(lambda x: np.exp(-np.exp(-power(x)))),
            sf=vectorized(lambda x: -np.expm1(-np.exp(-power(x)))),
            pdf=vectorized(pdf),
            pdf2=vectorized(pdf2),
            quantile=vectorized(lambda p: np.where(p > floor, np.maximum(-np.log(-np.log(p)), 0.0), 0.0) ** (1.0 / alpha)),
            isf=vectorized(lambda q: np.where(q < 1.0 - floor, np.maximum(-np.log(-np.log1p(-q)), 0.0), 0.0) ** (1.0 / alpha)),
            omega=math.inf,
            support_left=0.0
        )
        envelope = vectorized(lambda x: np.where(x > 0, abs(-1.0 + 1.0 / alpha) * positive(x) ** -alpha, np.inf))

        return CatalogEntry(spec=spec, regime=Regime.gumbel(), envelope=envelope, params=(alpha,))

    @staticmethod
    def _std_normal() -> CatalogEntry:
        spec = DistributionSpec(
            name="std_normal",
            cdf=vectorized(lambda x: 0.5 * special.erfc(-x / _SQRT2)),
            sf=vectorized(lambda x: 0.5 * special.erfc(x / _SQRT2)),
            pdf=vectorized(lambda x: np.exp(-0.5 * x * x) / _SQRT_2PI),
            pdf2=vectorized(lambda x: -x * np.exp(-0.5 * x * x) / _SQRT_2PI),
            omega=math.inf,
            support_left=-math.inf
        )

        return CatalogEntry(spec=spec, regime=Regime.gumbel(), envelope=vectorized(lambda x: CatalogFactory._normal_envelope(x, True)))

    @staticmethod
    def printed_normal_envelope(x: Any) -> Any:
        """1 + log F(x) (1 + x / p(x)) exactly as printed; dominated by |h_0| by -log F(x) x (1 - F(x)) / p(x)."""
        return vectorized(lambda array: CatalogFactory._normal_envelope(array, False))(x)

    @staticmethod
    def _normal_envelope(x: np.ndarray, weighted: bool) -> np.ndarray:
        # Mills ratio (1 - F) / p through erfcx keeps the tail finite where p underflows.
        sf = 0.5 * special.erfc(x / _SQRT2)
        cdf = 0.5 * special.erfc(-x / _SQRT2)
        neg_log_cdf = -np.log1p(-sf)
        log_ratio = np.where(sf > 0, neg_log_cdf / np.where(sf > 0, sf, 1.0), 1.0)
        mills = _SQRT_HALF_PI * special.erfcx(x / _SQRT2)
        weight = cdf if weighted else 1.0
        return 1.0 - neg_log_cdf - x * weight * log_ratio * mills
