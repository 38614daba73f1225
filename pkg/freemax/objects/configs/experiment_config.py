import math
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from freemax._app_config import FreeMaxAppConfig
from freemax.objects.configs.rate_reference import RateReference
from freemax.objects.distributions.catalog_entry import CatalogEntry
from freemax.objects.distributions.regime_tag import RegimeTag
from freemax.resolvers.regime_resolver import RegimeResolver


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    entry: CatalogEntry = Field(description="Catalog entry whose free max-convolution powers are studied")
    n_list: List[int] = Field(description="Strictly increasing list of n values, each at least 2")
    grid_points: int = Field(FreeMaxAppConfig.default_grid_points, ge=1000, description="Number of grid nodes per sup-norm evaluation")
    domain_override: Optional[tuple[float, float]] = Field(None, description="Compact interval replacing the theorem domain")
    rate_reference: RateReference = Field(RateReference.MaxOfBoth, description="Reference sequence for the O(n^-1 v g) comparison")

    @model_validator(mode="after")
    def _check_n_list(self) -> "ExperimentConfig":
        if len(self.n_list) < 2:
            raise ValueError("n_list needs at least two values to fit a rate")
        for n in self.n_list:
            if n < 2 or n > FreeMaxAppConfig.max_n:
                raise ValueError(f"Every n must lie in [2, {FreeMaxAppConfig.max_n}], got {n}")
        for previous, current in zip(self.n_list, self.n_list[1:]):
            if current <= previous:
                raise ValueError("n_list must be strictly increasing")
        return self

    @model_validator(mode="after")
    def _check_domain(self) -> "ExperimentConfig":
        regime = self.entry.regime
        if self.domain_override is None:
            if regime.tag == RegimeTag.Weibull and regime.alpha >= -1:
                raise ValueError(f"Weibull entries with -1 <= alpha < 0 converge only on compact sets; domain_override is required (alpha={regime.alpha})")
            return self

        lower, upper = self.domain_override
        if not (math.isfinite(lower) and math.isfinite(upper)) or not lower < upper:
            raise ValueError(f"domain_override must be a compact interval, got {self.domain_override}")

        domain_lower, domain_upper = RegimeResolver.theorem_domain(regime)
        if not (domain_lower < lower and upper < domain_upper):
            raise ValueError(f"domain_override {self.domain_override} must lie inside the theorem domain ({domain_lower}, {domain_upper})")
        return self
