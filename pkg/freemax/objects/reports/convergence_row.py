from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class ConvergenceRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=2, description="Number of free max-convolution factors")
    sup_error: float = Field(ge=0, description="Supremum of |w_n - free EVD density| over the theorem domain")
    argmax_x: float = Field(description="Point attaining sup_error")
    A_n: float = Field(description="Lower edge of the support window")
    B_n: float = Field(description="Upper edge of the support window")
    g_at_norm: Optional[float] = Field(None, description="Envelope at the norming point, when the entry has one")
    n_inv: float = Field(description="1 / n")
    theorem_bound: Optional[float] = Field(None, description="Constant-carrying bound from the density convergence theorems")
