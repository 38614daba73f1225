import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from freemax._app_config import FreeMaxAppConfig
from freemax.objects.configs.experiment_config import ExperimentConfig
from freemax.objects.configs.rate_reference import RateReference
from freemax.objects.distributions.catalog_entry import CatalogEntry
from freemax.objects.distributions.regime_tag import RegimeTag
from freemax.objects.evd.free_evd import FreeEVD
from freemax.objects.factories.catalog_factory import CatalogFactory
from freemax.objects.free_powers.free_power import FreePower
from freemax.objects.free_powers.support_window import SupportWindow
from freemax.objects.norming.norming_pair import NormingPair
from freemax.objects.reports.convergence_report import ConvergenceReport
from freemax.objects.reports.convergence_row import ConvergenceRow
from freemax.objects.reports.witness_result import WitnessResult
from freemax.resolvers.regime_resolver import RegimeResolver
from freemax.services.evd_service import EvdService
from freemax.services.free_max_convolution_service import FreeMaxConvolutionService
from freemax.services.grid_maximizer_service import GridMaximizerService
from freemax.services.norming_service import NormingService
from freemax.services.von_mises_service import VonMisesService

logger = logging.getLogger(__name__)


class ConvergenceManager:

    def __init__(self, worker_count: Optional[int] = None) -> None:
        self._worker_count = worker_count

    def sup_error(self, entry: CatalogEntry, n: int, grid_points: int = FreeMaxAppConfig.default_grid_points, domain_override: Optional[tuple[float, float]] = None) -> tuple[float, float]:
        row = self._row(entry, n, grid_points, domain_override)
        return row.sup_error, row.argmax_x

    def run_experiment(self, config: ExperimentConfig) -> ConvergenceReport:
        entry = config.entry
        if config.rate_reference == RateReference.GAtNorm and entry.envelope is None:
            raise ValueError(f"{entry.name} has no envelope, so g at the norming point cannot serve as rate reference")

        workers = min(self._workers(), len(config.n_list))
        logger.info("Running %s over %d values of n with %d workers", entry.name, len(config.n_list), workers)

        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(
                lambda n: self._row(entry, n, config.grid_points, config.domain_override),
                config.n_list
            ))

        return ConvergenceManager._summarize(entry, config.rate_reference, rows)

    def boundary_gap(self, entry: CatalogEntry, n: int) -> float:
        """sup over (A_n, 1] of w_n, where the free Frechet density vanishes."""
        if entry.regime.tag != RegimeTag.Frechet:
            raise ValueError(f"The boundary gap concerns Frechet-type entries; {entry.name} is {entry.regime.tag.value}")

        free_power, window = ConvergenceManager._free_power(entry, n)
        if not window.a_lower < 1:
            raise ValueError(f"A_n = {window.a_lower} is not below 1 for {entry.name} at n={n}")

        evd = EvdService.free_evd(entry.alpha)
        width = 1.0 - window.a_lower
        grid = window.a_lower + width * np.geomspace(1e-9, 1.0, FreeMaxAppConfig.default_grid_points)
        grid = grid[grid > window.a_lower]
        gap = lambda x: np.abs(FreeMaxConvolutionService.density_wn(free_power, x, window) - evd.density(x))

        value, argmax = GridMaximizerService.maximize(gap, grid)
        logger.debug("Boundary gap of %s at n=%d: %r at x=%r", entry.name, n, value, argmax)
        return value

    def nonconvergence_witness(self, alpha: float, n: int) -> WitnessResult:
        if not -0.5 < alpha < 0:
            raise ValueError(f"The witness needs -1/2 < alpha < 0, got {alpha}")
        if n < 2:
            raise ValueError(f"n must be at least 2, got {n}")

        # |w_n - density| >= 1 on (-c, 0)
        log_c = math.log(-alpha / n * (1.0 - 1.0 / (2.0 * n))) / (2.0 * alpha + 1.0)
        if log_c < math.log(np.finfo(float).tiny):
            raise ValueError(f"The witness window (-c, 0) has c = exp({log_c:.6g}) for alpha={alpha}, n={n}; no float lies inside it")
        c = math.exp(log_c)
        x_witness = -0.5 * c

        entry = CatalogFactory.create("weibull", [alpha])
        free_power, window = ConvergenceManager._free_power(entry, n)

        evd = EvdService.free_evd(alpha)
        error = abs(FreeMaxConvolutionService.density_wn(free_power, x_witness, window) - evd.density(x_witness))
        holds = error >= 1.0
        if not holds:
            logger.warning("Witness error %r below 1 for alpha=%r, n=%d", error, alpha, n)

        return WitnessResult(alpha=alpha, n=n, window_left=-c, x_witness=x_witness, error_at_witness=error, holds=holds)

    def weak_convergence_check(self, entry: CatalogEntry, n: int, x_grid: Sequence[float]) -> float:
        pair = NormingService.norming(entry, n)
        free_power = FreePower(base=entry.spec, n=n, norming=pair)
        evd = EvdService.free_evd(entry.alpha)

        xs = np.asarray(x_grid, dtype=float)
        distance = np.abs(np.asarray(FreeMaxConvolutionService.free_power_cdf(free_power, xs)) - np.asarray(evd.cdf(xs)))
        return float(np.max(distance))

    def theorem_bound(self, entry: CatalogEntry, n: int, pair: Optional[NormingPair] = None) -> Optional[float]:
        if entry.envelope is None:
            return None
        if pair is None:
            pair = NormingService.norming(entry, n)

        g = float(entry.envelope(VonMisesService.norm_point(entry, pair)))
        tail = -math.expm1(-1.0 / n)

        if entry.regime.tag == RegimeTag.Frechet:
            return (1.0 + 2.0 / math.e) * g + entry.alpha * tail
        if entry.regime.tag == RegimeTag.Weibull:
            beta = -entry.alpha
            if not beta > 1:
                return None
            return (1.0 + 2.0 * beta / (math.e * (beta - 1.0))) * g + beta * tail
        return g / math.e + tail

    def _row(self, entry: CatalogEntry, n: int, grid_points: int, domain_override: Optional[tuple[float, float]]) -> ConvergenceRow:
        if n < 2:
            raise ValueError(f"n must be at least 2, got {n}")

        free_power, window = ConvergenceManager._free_power(entry, n)
        evd = EvdService.free_evd(entry.alpha)

        domain_lower, domain_upper = domain_override or RegimeResolver.theorem_domain(entry.regime)
        lower = max(domain_lower, window.a_lower)
        upper = min(domain_upper, window.b_upper)
        if not lower < upper:
            raise ValueError(f"Domain ({domain_lower}, {domain_upper}) misses the support window of {entry.name} at n={n}")

        error = lambda x: np.abs(FreeMaxConvolutionService.density_wn(free_power, x, window) - evd.density(x))
        grid = ConvergenceManager._grid(free_power, window, evd, lower, upper, grid_points, domain_override is not None)
        sup, argmax = GridMaximizerService.maximize(error, grid)

        g_at_norm = None
        if entry.envelope is not None:
            g_at_norm = float(entry.envelope(VonMisesService.norm_point(entry, free_power.norming)))

        logger.info("%s n=%d: sup error %.6g at x=%.6g", entry.name, n, sup, argmax)
        return ConvergenceRow(
            n=n,
            sup_error=sup,
            argmax_x=argmax,
            A_n=window.a_lower,
            B_n=window.b_upper,
            g_at_norm=g_at_norm,
            n_inv=1.0 / n,
            theorem_bound=self.theorem_bound(entry, n, free_power.norming)
        )

    def _workers(self) -> int:
        if self._worker_count is not None:
            return self._worker_count
        return FreeMaxAppConfig.worker_count()

    @staticmethod
    def _free_power(entry: CatalogEntry, n: int) -> tuple[FreePower, SupportWindow]:
        pair = NormingService.norming(entry, n)
        free_power = FreePower(base=entry.spec, n=n, norming=pair)
        return free_power, FreeMaxConvolutionService.support_window(free_power)

    @staticmethod
    def _grid(free_power: FreePower, window: SupportWindow, evd: FreeEVD, lower: float, upper: float, points: int, compact: bool) -> np.ndarray:
        if compact:
            grid = np.linspace(lower, upper, points)
            return grid[(grid > window.a_lower) & (grid < window.b_upper)]

        if math.isinf(upper):
            upper = ConvergenceManager._tail_end(free_power, window, evd, lower)
            return GridMaximizerService.geometric_grid(lower, upper, points)

        return GridMaximizerService.edge_refined_grid(lower, upper, points)

    @staticmethod
    def _tail_end(free_power: FreePower, window: SupportWindow, evd: FreeEVD, lower: float) -> float:
        x_max = lower + 1.0
        for _ in range(FreeMaxAppConfig.tail_max_doublings):
            density = float(FreeMaxConvolutionService.density_wn(free_power, x_max, window))
            if evd.density(x_max) < FreeMaxAppConfig.tail_tol and density <= FreeMaxAppConfig.tail_tol:
                break
            x_max = lower + 2.0 * (x_max - lower)
        else:
            logger.warning("Tail of %s at n=%d still above %g at x=%r", free_power.base.name, free_power.n, FreeMaxAppConfig.tail_tol, x_max)

        logger.debug("Grid for %s at n=%d ends at x=%r", free_power.base.name, free_power.n, x_max)
        return x_max

    @staticmethod
    def _summarize(entry: CatalogEntry, rate_reference: RateReference, rows: list[ConvergenceRow]) -> ConvergenceReport:
        references = np.array([ConvergenceManager._reference(row, rate_reference) for row in rows])
        errors = np.array([row.sup_error for row in rows])
        ns = np.array([row.n for row in rows], dtype=float)

        tail_count = max(2, len(rows) // 2)
        tiny = np.finfo(float).tiny
        slope = float(np.polyfit(np.log(ns[-tail_count:]), np.log(np.maximum(errors[-tail_count:], tiny)), 1)[0])

        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(references > 0, errors / references, np.where(errors > 0, np.inf, 0.0))
        constant = float(np.max(ratios[-tail_count:]))

        with np.errstate(invalid="ignore"):
            bound_satisfied = bool(np.all(errors[:-tail_count] <= 2.0 * constant * references[:-tail_count]))
            fits = errors <= constant * references * (1.0 + 1e-12)

        bound_holds_from = None
        for index in range(len(rows) - 1, -1, -1):
            if not fits[index]:
                break
            bound_holds_from = rows[index].n

        logger.info("%s: slope %.4f, C %.6g, bound satisfied %s", entry.name, slope, constant, bound_satisfied)
        return ConvergenceReport(
            entry_name=entry.name,
            alpha=entry.alpha,
            rate_reference=rate_reference,
            per_n=rows,
            fitted_slope=slope,
            constant=constant,
            bound_satisfied=bound_satisfied,
            bound_holds_from=bound_holds_from
        )

    @staticmethod
    def _reference(row: ConvergenceRow, rate_reference: RateReference) -> float:
        if rate_reference == RateReference.NInv:
            return row.n_inv
        if rate_reference == RateReference.GAtNorm:
            return row.g_at_norm if row.g_at_norm is not None else 0.0
        return max(row.n_inv, row.g_at_norm or 0.0)
