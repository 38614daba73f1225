import logging
import math
from typing import Any, Callable

import numpy as np
from scipy import optimize

from freemax._app_config import FreeMaxAppConfig
from freemax._vectorized import as_result, vectorized
from freemax.objects.distributions.distribution_spec import DistributionSpec

logger = logging.getLogger(__name__)

_EPS = float(np.finfo(float).eps)
_FIRST_DERIVATIVE_STEP = _EPS ** (1.0 / 3.0)
_SECOND_DERIVATIVE_STEP = _EPS ** 0.25


class DistributionService:

    @staticmethod
    def survival(spec: DistributionSpec, x: Any) -> Any:
        if spec.sf is not None:
            return spec.sf(x)
        return as_result(1.0 - np.asarray(spec.cdf(x), dtype=float))

    @staticmethod
    def neg_log_cdf(spec: DistributionSpec, x: Any) -> Any:
        survival = np.asarray(DistributionService.survival(spec, x), dtype=float)
        with np.errstate(divide="ignore"):
            return as_result(-np.log1p(-survival))

    @staticmethod
    def quantile_of(spec: DistributionSpec, p: float) -> float:
        if not 0 < p < 1:
            raise ValueError(f"Probability must lie in (0, 1), got {p}")

        if spec.quantile is not None:
            return float(spec.quantile(p))

        x = DistributionService._solve_increasing(spec, lambda point: float(spec.cdf(point)) - p)
        DistributionService._check_residual(spec, abs(float(spec.cdf(x)) - p), f"F(x) = {p}")
        return x

    @staticmethod
    def upper_quantile_of(spec: DistributionSpec, q: float) -> float:
        if not 0 < q < 1:
            raise ValueError(f"Tail probability must lie in (0, 1), got {q}")

        if spec.isf is not None:
            return float(spec.isf(q))

        survival = lambda point: float(DistributionService.survival(spec, point))
        x = DistributionService._solve_increasing(spec, lambda point: q - survival(point))
        DistributionService._check_residual(spec, abs(survival(x) - q), f"1 - F(x) = {q}")
        return x

    @staticmethod
    def is_strictly_increasing_at(spec: DistributionSpec, x: float) -> bool:
        delta = 1e-8 * max(1.0, abs(x))
        left = float(DistributionService.survival(spec, x - delta))
        right = float(DistributionService.survival(spec, x + delta))
        return left > right

    @staticmethod
    def pdf_of(spec: DistributionSpec, x: Any) -> Any:
        DistributionService._check_interior(spec, x)
        if spec.pdf is not None:
            return spec.pdf(x)

        x = np.asarray(x, dtype=float)
        step = DistributionService._step(spec, x, _FIRST_DERIVATIVE_STEP, reach=1)
        survival = lambda point: np.asarray(DistributionService.survival(spec, point), dtype=float)
        return as_result((survival(x - step) - survival(x + step)) / (2.0 * step))

    @staticmethod
    def pdf2_of(spec: DistributionSpec, x: Any) -> Any:
        DistributionService._check_interior(spec, x)
        if spec.pdf2 is not None:
            return spec.pdf2(x)

        x = np.asarray(x, dtype=float)
        if spec.pdf is not None:
            pdf = lambda point: np.asarray(spec.pdf(point), dtype=float)
            step = DistributionService._step(spec, x, _FIRST_DERIVATIVE_STEP, reach=2)
            stencil = -pdf(x + 2.0 * step) + 8.0 * pdf(x + step) - 8.0 * pdf(x - step) + pdf(x - 2.0 * step)
            return as_result(stencil / (12.0 * step))

        # F'' = -(1 - F)''
        survival = lambda point: np.asarray(DistributionService.survival(spec, point), dtype=float)
        step = DistributionService._step(spec, x, _SECOND_DERIVATIVE_STEP, reach=2)
        stencil = (
            -survival(x + 2.0 * step) + 16.0 * survival(x + step) - 30.0 * survival(x)
            + 16.0 * survival(x - step) - survival(x - 2.0 * step)
        )
        return as_result(-stencil / (12.0 * step * step))

    @staticmethod
    def reflect(spec: DistributionSpec) -> DistributionSpec:
        if not spec.has_finite_endpoint:
            raise ValueError(f"Reflection needs a finite right endpoint; {spec.name} has omega = inf")

        omega = spec.omega

        def pull_back(x: np.ndarray) -> np.ndarray:
            return omega - 1.0 / np.where(x > 0, x, 1.0)

        def cdf(x: np.ndarray) -> np.ndarray:
            return np.where(x > 0, spec.cdf(pull_back(x)), 0.0)

        def sf(x: np.ndarray) -> np.ndarray:
            return np.where(x > 0, DistributionService.survival(spec, pull_back(x)), 1.0)

        pdf = None
        if spec.pdf is not None:
            def pdf(x: np.ndarray) -> np.ndarray:
                positive = np.where(x > 0, x, 1.0)
                return np.where(x > 0, spec.pdf(pull_back(x)) / positive ** 2, 0.0)

        pdf2 = None
        if spec.pdf is not None and spec.pdf2 is not None:
            def pdf2(x: np.ndarray) -> np.ndarray:
                positive = np.where(x > 0, x, 1.0)
                inner = pull_back(x)
                value = spec.pdf2(inner) / positive ** 4 - 2.0 * spec.pdf(inner) / positive ** 3
                return np.where(x > 0, value, 0.0)

        quantile = None
        if spec.quantile is not None:
            quantile = lambda p: 1.0 / (omega - np.asarray(spec.quantile(p), dtype=float))

        isf = None
        if spec.isf is not None:
            isf = lambda q: 1.0 / (omega - np.asarray(spec.isf(q), dtype=float))

        support_left = 0.0
        if math.isfinite(spec.support_left):
            support_left = 1.0 / (omega - spec.support_left)

        return DistributionSpec(
            name=f"reflected({spec.name})",
            cdf=vectorized(cdf),
            sf=vectorized(sf),
            pdf=vectorized(pdf) if pdf is not None else None,
            pdf2=vectorized(pdf2) if pdf2 is not None else None,
            quantile=vectorized(quantile) if quantile is not None else None,
            isf=vectorized(isf) if isf is not None else None,
            omega=math.inf,
            support_left=support_left
        )

    @staticmethod
    def _solve_increasing(spec: DistributionSpec, function: Callable[[float], float]) -> float:
        left, right = spec.support_left, spec.omega
        if math.isfinite(left) and math.isfinite(right):
            seed = 0.5 * (left + right)
        elif math.isfinite(left):
            seed = left + 1.0
        elif math.isfinite(right):
            seed = right - 1.0
        else:
            seed = 0.0

        if function(seed) == 0:
            return seed

        lower, upper = seed, seed
        step = max(1.0, abs(seed))
        expansions = 0
        if function(seed) < 0:
            while True:
                upper = min(seed + step, right)
                if function(upper) >= 0:
                    break
                lower = upper
                step *= 2.0
                expansions += 1
                if expansions >= FreeMaxAppConfig.bracket_max_expansions:
                    raise RuntimeError(f"No bracket found for {spec.name} after {expansions} expansions")
        else:
            while True:
                lower = max(seed - step, left)
                if function(lower) < 0:
                    break
                if lower == left:
                    # the level is already reached at the left edge (atom)
                    return left
                upper = lower
                step *= 2.0
                expansions += 1
                if expansions >= FreeMaxAppConfig.bracket_max_expansions:
                    raise RuntimeError(f"No bracket found for {spec.name} after {expansions} expansions")

        logger.debug("Bracket for %s after %d expansions: [%r, %r]", spec.name, expansions, lower, upper)
        try:
            return float(optimize.bisect(
                function,
                lower,
                upper,
                xtol=FreeMaxAppConfig.quantile_xtol,
                maxiter=FreeMaxAppConfig.bisection_max_iterations
            ))
        except RuntimeError as error:
            raise RuntimeError(f"Bisection for {spec.name} did not converge on [{lower}, {upper}]: {error}")

    @staticmethod
    def _check_residual(spec: DistributionSpec, residual: float, equation: str) -> None:
        if residual > FreeMaxAppConfig.quantile_tol:
            logger.warning("Quantile of %s leaves residual %.3e on %s; F jumps or is flat there", spec.name, residual, equation)

    @staticmethod
    def _check_interior(spec: DistributionSpec, x: Any) -> None:
        array = np.asarray(x, dtype=float)
        if not np.all((array > spec.support_left) & (array < spec.omega)):
            raise ValueError(f"Points must lie strictly inside ({spec.support_left}, {spec.omega}) for {spec.name}")

    @staticmethod
    def _step(spec: DistributionSpec, x: np.ndarray, scale: float, reach: int) -> np.ndarray:
        # the stencil x +- reach * step must stay inside the support
        step = scale * np.maximum(1.0, np.abs(x))
        distance = np.minimum(x - spec.support_left, spec.omega - x)
        return np.minimum(step, distance / (2.0 * reach))
