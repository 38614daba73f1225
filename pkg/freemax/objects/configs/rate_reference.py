from enum import Enum


class RateReference(str, Enum):
    NInv = "n_inv"
    GAtNorm = "g_at_norm"
    MaxOfBoth = "max_of_both"
