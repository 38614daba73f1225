from freemax.freemax import FreeMax

__all__ = ["FreeMax"]
