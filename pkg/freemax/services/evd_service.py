import logging
import math
from typing import Any, Optional, Sequence

import numpy as np
from scipy import integrate

from freemax._app_config import FreeMaxAppConfig
from freemax._vectorized import as_result, vectorized
from freemax.objects.distributions.catalog_entry import CatalogEntry
from freemax.objects.distributions.regime_tag import RegimeTag
from freemax.objects.evd.classical_evd import ClassicalEVD
from freemax.objects.evd.free_evd import FreeEVD
from freemax.objects.evd.gap_check import GapCheck
from freemax.objects.evd.u_gap_check import UGapCheck
from freemax.objects.norming.norming_pair import NormingPair
from freemax.services.distribution_service import DistributionService
from freemax.services.grid_maximizer_service import GridMaximizerService
from freemax.services.norming_service import NormingService
from freemax.services.von_mises_service import VonMisesService

logger = logging.getLogger(__name__)

_GAP_GRID_POINTS = 20_001


class EvdService:

    @staticmethod
    def free_evd(alpha: float) -> FreeEVD:
        if alpha > 0:
            def cdf(x: np.ndarray) -> np.ndarray:
                return np.where(x >= 1, 1.0 - np.where(x >= 1, x, 1.0) ** -alpha, 0.0)

            def density(x: np.ndarray) -> np.ndarray:
                return np.where(x > 1, alpha * np.where(x > 1, x, 1.0) ** (-alpha - 1.0), 0.0)

            domain = (1.0, math.inf)
        elif alpha < 0:
            def cdf(x: np.ndarray) -> np.ndarray:
                inside = (x >= -1) & (x < 0)
                value = 1.0 - np.where(inside, -x, 1.0) ** -alpha
                return np.where(inside, value, np.where(x >= 0, 1.0, 0.0))

            def density(x: np.ndarray) -> np.ndarray:
                inside = (x > -1) & (x < 0)
                return np.where(inside, -alpha * np.where(inside, -x, 1.0) ** (-alpha - 1.0), 0.0)

            domain = (-1.0, 0.0)
        else:
            def cdf(x: np.ndarray) -> np.ndarray:
                return np.where(x >= 0, -np.expm1(-np.maximum(x, 0.0)), 0.0)

            def density(x: np.ndarray) -> np.ndarray:
                return np.where(x > 0, np.exp(-np.maximum(x, 0.0)), 0.0)

            domain = (0.0, math.inf)

        return FreeEVD(alpha=alpha, cdf=vectorized(cdf), density=vectorized(density), density_domain=domain)

    @staticmethod
    def classical_evd(alpha: float) -> ClassicalEVD:
        if alpha > 0:
            def cdf(x: np.ndarray) -> np.ndarray:
                return np.where(x > 0, np.exp(-np.where(x > 0, x, 1.0) ** -alpha), 0.0)
        elif alpha < 0:
            def cdf(x: np.ndarray) -> np.ndarray:
                return np.where(x < 0, np.exp(-np.where(x < 0, -x, 1.0) ** -alpha), 1.0)
        else:
            def cdf(x: np.ndarray) -> np.ndarray:
                return np.exp(-np.exp(-x))

        return ClassicalEVD(alpha=alpha, cdf=vectorized(cdf))

    @staticmethod
    def total_mass(evd: FreeEVD) -> float:
        lower, upper = evd.density_domain
        mass, error = integrate.quad(evd.density, lower, upper, limit=200)
        logger.debug("Mass of the free EVD with alpha=%r: %r (quadrature error %.1e)", evd.alpha, mass, error)
        return float(mass)

    @staticmethod
    def frechet_gap_bound(alpha1: float, alpha2: float) -> GapCheck:
        if not (alpha1 > 0 and alpha2 > 0):
            raise ValueError(f"Free Frechet laws need positive indices, got ({alpha1}, {alpha2})")

        bound = math.exp(-1.0) * abs(alpha2 - alpha1) / max(alpha1, alpha2)
        return EvdService._power_gap(alpha1, alpha2, bound, "free Frechet")

    @staticmethod
    def x_weighted_gap_bound(beta1: float, beta2: float) -> GapCheck:
        if not (beta1 > 1 and beta2 > 1):
            raise ValueError(f"The x-weighted gap needs indices above 1, got ({beta1}, {beta2})")

        bound = math.exp(-1.0) * abs(beta2 - beta1) / max(beta1 - 1.0, beta2 - 1.0)
        return EvdService._power_gap(beta1 - 1.0, beta2 - 1.0, bound, "x-weighted free Frechet")

    @staticmethod
    def u_plus(a: float, x: Any) -> Any:
        if not a > 0:
            raise ValueError(f"U_+ needs a > 0, got {a}")

        def evaluate(points: np.ndarray) -> np.ndarray:
            inside = points > -1.0 / a
            base = np.where(inside, a * points, 0.0)
            return np.where(inside, -np.expm1(-np.log1p(base) / a), 0.0)

        return vectorized(evaluate)(x)

    @staticmethod
    def u_minus(a: float, x: Any) -> Any:
        if not a > 0:
            raise ValueError(f"U_- needs a > 0, got {a}")

        def evaluate(points: np.ndarray) -> np.ndarray:
            inside = points < 1.0 / a
            base = np.where(inside, -a * points, 0.0)
            return np.where(inside, -np.expm1(np.log1p(base) / a), 1.0)

        return vectorized(evaluate)(x)

    @staticmethod
    def u_gap_bound(a: float) -> UGapCheck:
        if not a > 0:
            raise ValueError(f"U_+- need a > 0, got {a}")

        within_hypothesis = a < 1
        if not within_hypothesis:
            logger.warning("u_gap_bound evaluated at a=%r outside 0 < a < 1", a)

        gumbel = EvdService.free_evd(0.0)

        # U_+: smooth on [0, inf)
        log_reach = min(16.0 * math.log(10.0) * a - math.log(a), 690.0)
        plus_grid = np.concatenate([[0.0], GridMaximizerService.geometric_grid(0.0, math.exp(log_reach) + 50.0, _GAP_GRID_POINTS)])
        plus_gap = lambda x: np.abs(np.asarray(EvdService.u_plus(a, x)) - np.asarray(gumbel.cdf(x)))
        sup_plus, _ = GridMaximizerService.maximize(plus_gap, plus_grid)

        # U_-: split at 1/a; beyond it the gap is e^{-x}, largest at x = 1/a
        minus_gap = lambda x: np.abs(np.asarray(EvdService.u_minus(a, x)) - np.asarray(gumbel.cdf(x)))
        inner_grid = np.concatenate([np.linspace(0.0, 1.0 / a, _GAP_GRID_POINTS), GridMaximizerService.geometric_grid(0.0, 1.0 / a, _GAP_GRID_POINTS)])
        inner_grid = np.unique(inner_grid[inner_grid < 1.0 / a])
        sup_inner, _ = GridMaximizerService.maximize(minus_gap, inner_grid)
        sup_minus = max(sup_inner, math.exp(-1.0 / a))

        bound = math.exp(-1.0) * a
        violated = max(sup_plus, sup_minus) > bound + FreeMaxAppConfig.domination_tol
        if violated:
            logger.warning("U gap exceeds e^-1 a at a=%r: plus %r, minus %r, bound %r", a, sup_plus, sup_minus, bound)

        return UGapCheck(
            a=a,
            sup_gap_plus=sup_plus,
            sup_gap_minus=sup_minus,
            bound=bound,
            within_hypothesis=within_hypothesis,
            violated=violated,
            negative_axis_bounded=False
        )

    @staticmethod
    def sandwich_check(entry: CatalogEntry, n: int, x_grid: Sequence[float], pair: Optional[NormingPair] = None) -> bool:
        if entry.envelope is None:
            raise ValueError(f"{entry.name} has no certified envelope; the sandwich inequality needs one")

        xs = np.asarray(x_grid, dtype=float)
        if pair is None:
            pair = NormingService.norming(entry, n)
        g = float(entry.envelope(VonMisesService.norm_point(entry, pair)))

        if entry.regime.tag == RegimeTag.Frechet:
            if np.any(xs <= 1):
                raise ValueError("The Frechet sandwich is stated for x > 1")
            alpha = entry.alpha
            middle = n * np.asarray(DistributionService.neg_log_cdf(entry.spec, pair.a * xs), dtype=float) - xs ** -alpha
            lower = xs ** (-alpha - g) - xs ** -alpha
            upper = xs ** (-(alpha - g)) - xs ** -alpha
        elif entry.regime.tag == RegimeTag.Weibull:
            if np.any(xs <= 1):
                raise ValueError("The reflected Weibull sandwich is stated for x > 1")
            beta = -entry.alpha
            reflected = DistributionService.reflect(entry.spec)
            neg_log = np.asarray(DistributionService.neg_log_cdf(reflected, xs / pair.a), dtype=float)
            middle = n * xs * neg_log - xs ** (1.0 - beta)
            lower = xs ** (1.0 - beta - g) - xs ** (1.0 - beta)
            upper = xs ** (1.0 - (beta - g)) - xs ** (1.0 - beta)
        else:
            if np.any(xs <= 0):
                raise ValueError("The Gumbel sandwich is stated for x > 0")
            middle = 1.0 - n * np.asarray(DistributionService.neg_log_cdf(entry.spec, pair.a * xs + pair.b), dtype=float)
            if g > 0:
                lower = np.asarray(EvdService.u_plus(g, xs), dtype=float)
                upper = np.asarray(EvdService.u_minus(g, xs), dtype=float)
            else:
                lower = upper = np.asarray(EvdService.free_evd(0.0).cdf(xs), dtype=float)

        tolerance = FreeMaxAppConfig.sandwich_tol
        holds = bool(np.all(lower <= middle + tolerance) and np.all(middle <= upper + tolerance))
        if not holds:
            excess = np.maximum(lower - middle, middle - upper)
            worst = int(np.argmax(excess))
            logger.warning("Sandwich fails for %s at n=%d, x=%r by %.3e", entry.name, n, xs[worst], excess[worst])
        return holds

    @staticmethod
    def classical_power_cdf(entry: CatalogEntry, n: int, x: Any, pair: Optional[NormingPair] = None) -> Any:
        if pair is None:
            pair = NormingService.norming(entry, n)

        point = pair.a * np.asarray(x, dtype=float) + pair.b
        if n == 1:
            return entry.spec.cdf(point)

        # F^n = exp(n log F) with log F from the survival function
        neg_log = np.asarray(DistributionService.neg_log_cdf(entry.spec, point), dtype=float)
        return as_result(np.exp(-n * neg_log))

    @staticmethod
    def _power_gap(first: float, second: float, bound: float, label: str) -> GapCheck:
        if first == second:
            return GapCheck(sup_gap=0.0, argmax=1.0, bound=bound, violated=False)

        low, high = min(first, second), max(first, second)
        # stationary point of x^{-low} - x^{-high}
        log_argmax = math.log(high / low) / (high - low)
        argmax = math.exp(min(log_argmax, 690.0))
        analytic = math.exp(-low * log_argmax) - math.exp(-high * log_argmax)

        gap = lambda x: np.abs(np.asarray(x, dtype=float) ** -first - np.asarray(x, dtype=float) ** -second)
        reach = min(max(10.0 * argmax, 1e3), 1e300)
        grid_value, grid_argmax = GridMaximizerService.maximize(gap, GridMaximizerService.geometric_grid(1.0, reach, _GAP_GRID_POINTS))
        if grid_value > analytic:
            analytic, argmax = grid_value, grid_argmax

        violated = analytic > bound + FreeMaxAppConfig.domination_tol
        if violated:
            logger.warning("%s gap for indices (%r, %r): measured %r exceeds the stated bound %r", label, first, second, analytic, bound)
        return GapCheck(sup_gap=analytic, argmax=argmax, bound=bound, violated=violated)
