from pydantic import BaseModel, ConfigDict, Field


class GapCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    sup_gap: float = Field(ge=0, description="Measured supremum of the gap between the two laws")
    argmax: float = Field(description="Point attaining the measured supremum")
    bound: float = Field(ge=0, description="Bound stated for the supremum")
    violated: bool = Field(description="True when sup_gap exceeds the bound beyond round-off")
