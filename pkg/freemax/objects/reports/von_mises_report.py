from pydantic import BaseModel, ConfigDict, Field

from freemax.objects.distributions.regime import Regime


class VonMisesReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    entry_name: str = Field(description="Catalog entry the report was computed for")
    regime: Regime = Field(description="Regime selecting the von Mises functional")
    h_values: list[tuple[float, float]] = Field(description="Sampled pairs (x, h_alpha(x))")
    envelope_values: list[tuple[float, float]] = Field(description="Sampled pairs (x, g(x))")
    envelope_at_norm: list[tuple[int, float]] = Field(description="Pairs (n, g at the norming point)")
    h_at_norm: list[tuple[int, float]] = Field(description="Pairs (n, h_alpha at the norming point)")
    monotone_ok: bool = Field(description="g is nonincreasing on the sampled grid")
    domination_ok: bool = Field(description="|h_alpha| <= g at every sampled point")
    certified: bool = Field(description="False when g is the grid running maximum rather than a closed form")
