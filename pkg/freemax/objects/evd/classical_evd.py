from pydantic import BaseModel, ConfigDict, Field

from freemax.objects.distributions.distribution_spec import RealFunction


class ClassicalEVD(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha: float = Field(description="Tail index selecting the classical Frechet, Weibull or Gumbel law")
    cdf: RealFunction = Field(description="Classical extreme value distribution function")
