from pydantic import BaseModel, ConfigDict, Field


class UGapCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float = Field(gt=0, description="Parameter of the comparison laws U_+ and U_-")
    sup_gap_plus: float = Field(ge=0, description="sup over x >= 0 of |U_+(a, x) - free Gumbel CDF|")
    sup_gap_minus: float = Field(ge=0, description="sup over x >= 0 of |U_-(a, x) - free Gumbel CDF|")
    bound: float = Field(ge=0, description="e^{-1} a")
    within_hypothesis: bool = Field(description="True when 0 < a < 1")
    violated: bool = Field(description="True when either gap exceeds the bound beyond round-off")
    negative_axis_bounded: bool = Field(False, description="The displayed formulas leave [0, 1] on x < 0, so the gap there is unbounded")
