import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SupportWindow(BaseModel):
    model_config = ConfigDict(frozen=True)

    a_lower: float = Field(description="A_n: largest x with vanishing free power CDF")
    b_upper: float = Field(math.inf, description="B_n: (omega - b_n) / a_n, or math.inf for an unbounded right endpoint")

    @model_validator(mode="after")
    def _check_order(self) -> "SupportWindow":
        if not self.a_lower < self.b_upper:
            raise ValueError(f"Degenerate support window ({self.a_lower}, {self.b_upper})")
        return self

    def contains(self, x: float) -> bool:
        return self.a_lower < x < self.b_upper
