from enum import Enum


class CommandVerb(str, Enum):
    List = "list"
    Norming = "norming"
    Density = "density"
    VonMises = "vonmises"
    Lemmas = "lemmas"
    Converge = "converge"
    Witness = "witness"
