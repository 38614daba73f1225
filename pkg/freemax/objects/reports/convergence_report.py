from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from freemax.objects.configs.rate_reference import RateReference
from freemax.objects.reports.convergence_row import ConvergenceRow


class ConvergenceReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    entry_name: str = Field(description="Catalog entry the experiment ran on")
    alpha: float = Field(description="Tail index of the entry")
    rate_reference: RateReference = Field(description="Reference sequence the sup errors are compared with")
    per_n: list[ConvergenceRow] = Field(description="One row per tested n, in increasing n")
    fitted_slope: float = Field(description="Least squares slope of log sup_error against log n over the last half of the rows")
    constant: float = Field(ge=0, description="C = max over the last half of sup_error / reference")
    bound_satisfied: bool = Field(description="The first half of the rows also lies below 2 C times the reference")
    bound_holds_from: Optional[int] = Field(None, description="Smallest tested n from which sup_error <= C reference for every larger tested n")
