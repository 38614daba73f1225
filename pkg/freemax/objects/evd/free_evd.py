from pydantic import BaseModel, ConfigDict, Field

from freemax.objects.distributions.distribution_spec import RealFunction


class FreeEVD(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha: float = Field(description="Tail index selecting the free Frechet, Weibull or Gumbel law")
    cdf: RealFunction = Field(description="Free extreme value distribution function")
    density: RealFunction = Field(description="Density, zero outside the open density domain")
    density_domain: tuple[float, float] = Field(description="Open interval on which the density is positive")
