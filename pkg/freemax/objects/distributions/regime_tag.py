from enum import Enum


class RegimeTag(str, Enum):
    Frechet = "frechet"
    Weibull = "weibull"
    Gumbel = "gumbel"
