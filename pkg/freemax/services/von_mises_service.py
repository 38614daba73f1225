import logging
from typing import Any, Callable, Sequence

import numpy as np

from freemax._app_config import FreeMaxAppConfig
from freemax._vectorized import as_result
from freemax.objects.distributions.catalog_entry import CatalogEntry
from freemax.objects.distributions.distribution_spec import DistributionSpec
from freemax.objects.distributions.regime_tag import RegimeTag
from freemax.objects.norming.norming_pair import NormingPair
from freemax.objects.reports.von_mises_report import VonMisesReport
from freemax.services.distribution_service import DistributionService
from freemax.services.norming_service import NormingService

logger = logging.getLogger(__name__)


class VonMisesService:

    @staticmethod
    def h_frechet(spec: DistributionSpec, alpha: float, x: Any) -> Any:
        if not alpha > 0:
            raise ValueError(f"h_alpha in the Frechet case needs alpha > 0, got {alpha}")

        array = np.asarray(x, dtype=float)
        cdf, neg_log_cdf, pdf = VonMisesService._phi_parts(spec, array)
        return as_result(array * pdf / (cdf * neg_log_cdf) - alpha)

    @staticmethod
    def h_weibull(spec: DistributionSpec, alpha: float, x: Any) -> Any:
        if not alpha < 0:
            raise ValueError(f"h_alpha in the Weibull case needs alpha < 0, got {alpha}")
        if not spec.has_finite_endpoint:
            raise ValueError(f"h_alpha in the Weibull case needs a finite right endpoint; {spec.name} has omega = inf")

        array = np.asarray(x, dtype=float)
        cdf, neg_log_cdf, pdf = VonMisesService._phi_parts(spec, array)
        return as_result((spec.omega - array) * pdf / (cdf * neg_log_cdf) + alpha)

    @staticmethod
    def h_gumbel(spec: DistributionSpec, x: Any) -> Any:
        array = np.asarray(x, dtype=float)
        cdf, neg_log_cdf, pdf = VonMisesService._phi_parts(spec, array)
        if np.any(pdf <= 0):
            raise ValueError(f"h_0 needs F' > 0; {spec.name} has a vanishing density on the requested points")

        second = np.asarray(DistributionService.pdf2_of(spec, array), dtype=float)
        if not np.all(np.isfinite(second)):
            raise ValueError(f"F'' of {spec.name} is not finite on the requested points")

        return as_result(neg_log_cdf - (cdf * second * neg_log_cdf / (pdf * pdf) + 1.0))

    @staticmethod
    def auxiliary_f(spec: DistributionSpec, x: Any) -> Any:
        array = np.asarray(x, dtype=float)
        cdf, neg_log_cdf, pdf = VonMisesService._phi_parts(spec, array)
        if np.any(pdf <= 0):
            raise ValueError(f"The auxiliary function needs phi' > 0; {spec.name} has a vanishing density on the requested points")

        return as_result(cdf * neg_log_cdf / pdf)

    @staticmethod
    def h(entry: CatalogEntry, x: Any) -> Any:
        regime = entry.regime
        if regime.tag == RegimeTag.Frechet:
            return VonMisesService.h_frechet(entry.spec, regime.alpha, x)
        if regime.tag == RegimeTag.Weibull:
            return VonMisesService.h_weibull(entry.spec, regime.alpha, x)
        return VonMisesService.h_gumbel(entry.spec, x)

    @staticmethod
    def norm_point(entry: CatalogEntry, pair: NormingPair) -> float:
        # a_n, omega - a_n or b_n
        if entry.regime.tag == RegimeTag.Frechet:
            return pair.a
        if entry.regime.tag == RegimeTag.Weibull:
            return entry.spec.omega - pair.a
        return pair.b

    @staticmethod
    def check_membership(entry: CatalogEntry, n_grid: Sequence[int], x_grid: Sequence[float], auto_envelope: bool = False) -> VonMisesReport:
        if entry.envelope is None and not auto_envelope:
            raise ValueError(f"{entry.name} has no closed-form envelope; request the auto envelope instead")

        xs = np.sort(np.asarray(x_grid, dtype=float))
        if xs.size == 0:
            raise ValueError("x_grid must not be empty")

        h_values = np.asarray(VonMisesService.h(entry, xs), dtype=float)
        norm_points = [(int(n), VonMisesService.norm_point(entry, NormingService.norming(entry, int(n)))) for n in n_grid]

        certified = entry.envelope is not None and not auto_envelope
        if certified:
            envelope = entry.envelope
        else:
            envelope = VonMisesService._running_envelope(entry, xs, h_values)
            logger.warning("Using a grid running maximum as envelope for %s; domination off the grid is not certified", entry.name)

        envelope_values = np.asarray(envelope(xs), dtype=float)

        with np.errstate(invalid="ignore"):
            steps = np.diff(envelope_values)
        # inf - inf on the left of a support where g is infinite counts as flat
        steps = np.where(np.isnan(steps), 0.0, steps)
        monotone_ok = bool(np.all(steps <= FreeMaxAppConfig.monotone_tol))
        domination_ok = bool(np.all(np.abs(h_values) <= envelope_values + FreeMaxAppConfig.domination_tol))

        if not domination_ok:
            worst = int(np.argmax(np.abs(h_values) - envelope_values))
            logger.warning("|h| exceeds g for %s at x=%r: %r > %r", entry.name, xs[worst], abs(h_values[worst]), envelope_values[worst])
        if not monotone_ok:
            logger.warning("Envelope of %s increases on the sampled grid", entry.name)

        return VonMisesReport(
            entry_name=entry.name,
            regime=entry.regime,
            h_values=list(zip(xs.tolist(), h_values.tolist())),
            envelope_values=list(zip(xs.tolist(), envelope_values.tolist())),
            envelope_at_norm=[(n, float(envelope(point))) for n, point in norm_points],
            h_at_norm=[(n, float(VonMisesService.h(entry, point))) for n, point in norm_points],
            monotone_ok=monotone_ok,
            domination_ok=domination_ok,
            certified=certified
        )

    @staticmethod
    def _running_envelope(entry: CatalogEntry, xs: np.ndarray, h_values: np.ndarray) -> Callable[[Any], Any]:
        magnitudes = np.abs(h_values)
        suffix_max = np.maximum.accumulate(magnitudes[::-1])[::-1]

        def envelope(x: Any) -> Any:
            points = np.asarray(x, dtype=float)
            index = np.searchsorted(xs, points, side="left")
            beyond = np.where(index < xs.size, suffix_max[np.minimum(index, xs.size - 1)], 0.0)
            own = np.abs(np.asarray(VonMisesService.h(entry, points), dtype=float))
            return as_result(np.maximum(beyond, own))

        return envelope

    @staticmethod
    def _phi_parts(spec: DistributionSpec, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        cdf = np.asarray(spec.cdf(x), dtype=float)
        survival = np.asarray(DistributionService.survival(spec, x), dtype=float)
        if np.any((cdf <= 0) | (survival <= 0)):
            raise ValueError(f"The von Mises functional of {spec.name} needs 0 < F(x) < 1 on every requested point")

        neg_log_cdf = np.asarray(DistributionService.neg_log_cdf(spec, x), dtype=float)
        pdf = np.asarray(DistributionService.pdf_of(spec, x), dtype=float)
        return cdf, neg_log_cdf, pdf
