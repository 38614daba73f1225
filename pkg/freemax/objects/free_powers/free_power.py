from pydantic import BaseModel, ConfigDict, Field, model_validator

from freemax._app_config import FreeMaxAppConfig
from freemax.objects.distributions.distribution_spec import DistributionSpec
from freemax.objects.norming.norming_pair import NormingPair


class FreePower(BaseModel):
    model_config = ConfigDict(frozen=True)

    base: DistributionSpec = Field(description="Distribution F convolved with itself")
    n: int = Field(ge=1, le=FreeMaxAppConfig.max_n, description="Number of free max-convolution factors")
    norming: NormingPair = Field(description="Affine map x -> a_n x + b_n applied before evaluation")

    @model_validator(mode="after")
    def _check_norming_matches(self) -> "FreePower":
        if self.norming.n != self.n:
            raise ValueError(f"Norming pair was computed for n={self.norming.n}, not n={self.n}")
        return self
