from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from freemax.objects.distributions.distribution_spec import DistributionSpec, RealFunction
from freemax.objects.distributions.regime import Regime


class CatalogEntry(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: DistributionSpec = Field(description="The sample distribution")
    regime: Regime = Field(description="Free extreme value type and tail index of the distribution")
    envelope: Optional[RealFunction] = Field(None, description="Closed-form nonincreasing bound g on the von Mises functional")
    params: tuple[float, ...] = Field((), description="Parameters the entry was built from")

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def alpha(self) -> float:
        return self.regime.alpha
