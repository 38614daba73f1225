from pydantic import BaseModel, ConfigDict, Field

from freemax.objects.distributions.regime_tag import RegimeTag


class NormingPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float = Field(gt=0, description="Scale a_n")
    b: float = Field(description="Shift b_n")
    n: int = Field(ge=1, description="Number of free max-convolution factors")
    residual: float = Field(ge=0, description="|F(target) - exp(-1/n)| at the point solving the defining equation")
    target: float = Field(description="Point where F equals exp(-1/n): a_n, omega - a_n or b_n depending on the regime")
    regime: RegimeTag = Field(description="Regime whose formula produced the pair")
    unique: bool = Field(True, description="False when F is flat at the target, so the root is only the infimum")
