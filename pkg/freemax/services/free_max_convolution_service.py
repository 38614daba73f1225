import logging
import math
from typing import Any, Optional

import numpy as np

from freemax._app_config import FreeMaxAppConfig
from freemax._vectorized import as_result
from freemax.objects.distributions.distribution_spec import DistributionSpec
from freemax.objects.free_powers.free_power import FreePower
from freemax.objects.free_powers.support_window import SupportWindow
from freemax.services.distribution_service import DistributionService

logger = logging.getLogger(__name__)


class FreeMaxConvolutionService:

    @staticmethod
    def free_max_cdf(first: DistributionSpec, second: DistributionSpec, x: Any) -> Any:
        first_survival = np.asarray(DistributionService.survival(first, x), dtype=float)
        second_survival = np.asarray(DistributionService.survival(second, x), dtype=float)
        return as_result(np.clip(1.0 - (first_survival + second_survival), 0.0, 1.0))

    @staticmethod
    def free_power_cdf(free_power: FreePower, x: Any) -> Any:
        point = FreeMaxConvolutionService._affine(free_power, x)
        if free_power.n == 1:
            return free_power.base.cdf(point)

        survival = np.asarray(DistributionService.survival(free_power.base, point), dtype=float)
        return as_result(np.clip(1.0 - free_power.n * survival, 0.0, 1.0))

    @staticmethod
    def density_wn(free_power: FreePower, x: Any, window: Optional[SupportWindow] = None) -> Any:
        if window is None:
            window = FreeMaxConvolutionService.support_window(free_power)

        array = np.asarray(x, dtype=float)
        if not np.all((array > window.a_lower) & (array < window.b_upper)):
            raise ValueError(f"w_n is defined only on ({window.a_lower}, {window.b_upper}) for {free_power.base.name}, n={free_power.n}")

        scale = free_power.n * free_power.norming.a
        density = np.asarray(DistributionService.pdf_of(free_power.base, FreeMaxConvolutionService._affine(free_power, array)), dtype=float)
        return as_result(scale * density)

    @staticmethod
    def support_window(free_power: FreePower) -> SupportWindow:
        base = free_power.base
        a, b = free_power.norming.a, free_power.norming.b

        if free_power.n == 1:
            lower_point = base.support_left
        else:
            lower_point = DistributionService.upper_quantile_of(base, 1.0 / free_power.n)
            survival = lambda point: float(DistributionService.survival(base, point))
            mismatch = abs(free_power.n * survival(lower_point) - 1.0)
            ulp = float(np.spacing(abs(lower_point)))
            jitter = free_power.n * abs(survival(lower_point - ulp) - survival(lower_point + ulp))
            if mismatch > FreeMaxAppConfig.window_tol + jitter:
                raise RuntimeError(f"Free power of {base.name} does not vanish at A_n (n={free_power.n}, mismatch {mismatch:.3e})")

        upper = math.inf
        if base.has_finite_endpoint:
            upper = (base.omega - b) / a
            if float(DistributionService.survival(base, base.omega)) > FreeMaxAppConfig.window_tol:
                raise RuntimeError(f"Free power of {base.name} does not reach 1 at B_n")

        window = SupportWindow(a_lower=(lower_point - b) / a, b_upper=upper)
        logger.debug("Support window of %s at n=%d: (%r, %r)", base.name, free_power.n, window.a_lower, window.b_upper)
        return window

    @staticmethod
    def _affine(free_power: FreePower, x: Any) -> Any:
        return free_power.norming.a * np.asarray(x, dtype=float) + free_power.norming.b
