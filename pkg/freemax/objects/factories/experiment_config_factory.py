import math
from typing import Any

from freemax.objects.configs.experiment_config import ExperimentConfig
from freemax.objects.distributions.catalog_entry import CatalogEntry
from freemax.objects.factories.catalog_factory import CatalogFactory


class ExperimentConfigFactory:

    @staticmethod
    def create(experiment_config: dict[str, Any]) -> ExperimentConfig:
        experiment_config = dict(experiment_config)

        if not isinstance(experiment_config.get("entry"), CatalogEntry):
            name = experiment_config.pop("distribution", None)
            if name is None:
                raise ValueError("Experiment configuration needs either an entry or a distribution name")
            params = experiment_config.pop("params", ())
            experiment_config["entry"] = CatalogFactory.create(name, params)

        return ExperimentConfig.model_validate(experiment_config)

    @staticmethod
    def decade_grid(n_min: int, n_max: int, per_decade: int) -> list[int]:
        """per_decade log-spaced integers from n_min to n_max inclusive."""
        if not 2 <= n_min < n_max:
            raise ValueError(f"Need 2 <= nmin < nmax, got ({n_min}, {n_max})")
        if per_decade < 1:
            raise ValueError(f"per_decade must be positive, got {per_decade}")

        start, stop = math.log10(n_min), math.log10(n_max)
        count = int(math.floor((stop - start) * per_decade + 1e-9)) + 1
        values = sorted({int(round(10.0 ** (start + index / per_decade))) for index in range(count)} | {n_max})
        return [value for value in values if n_min <= value <= n_max]
