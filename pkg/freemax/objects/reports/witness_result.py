from pydantic import BaseModel, ConfigDict, Field


class WitnessResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: float = Field(description="Weibull tail index in (-1/2, 0)")
    n: int = Field(ge=2, description="Number of free max-convolution factors")
    window_left: float = Field(description="Left edge of the interval (window_left, 0) where the error is at least one")
    x_witness: float = Field(description="Midpoint of the window")
    error_at_witness: float = Field(ge=0, description="|w_n - free Weibull density| at x_witness")
    holds: bool = Field(description="error_at_witness >= 1")
