from pydantic import BaseModel, ConfigDict, Field, model_validator

from freemax.objects.distributions.regime_tag import RegimeTag


class Regime(BaseModel):
    model_config = ConfigDict(frozen=True)

    tag: RegimeTag = Field(description="Free extreme value type the sample distribution is attracted to")
    alpha: float = Field(description="Tail index: positive for Frechet, negative for Weibull, zero for Gumbel")

    @model_validator(mode="after")
    def _check_alpha_sign(self) -> "Regime":
        if self.tag == RegimeTag.Frechet and not self.alpha > 0:
            raise ValueError(f"Frechet regime requires alpha > 0, got {self.alpha}")
        if self.tag == RegimeTag.Weibull and not self.alpha < 0:
            raise ValueError(f"Weibull regime requires alpha < 0, got {self.alpha}")
        if self.tag == RegimeTag.Gumbel and self.alpha != 0:
            raise ValueError(f"Gumbel regime requires alpha = 0, got {self.alpha}")
        return self

    @staticmethod
    def frechet(alpha: float) -> "Regime":
        return Regime(tag=RegimeTag.Frechet, alpha=alpha)

    @staticmethod
    def weibull(alpha: float) -> "Regime":
        return Regime(tag=RegimeTag.Weibull, alpha=alpha)

    @staticmethod
    def gumbel() -> "Regime":
        return Regime(tag=RegimeTag.Gumbel, alpha=0.0)

    @staticmethod
    def from_alpha(alpha: float) -> "Regime":
        if alpha > 0:
            return Regime.frechet(alpha)
        if alpha < 0:
            return Regime.weibull(alpha)
        return Regime.gumbel()
