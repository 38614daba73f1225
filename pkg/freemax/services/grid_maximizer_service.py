import logging
from typing import Any, Callable

import numpy as np
from scipy import optimize

from freemax._app_config import FreeMaxAppConfig

logger = logging.getLogger(__name__)


class GridMaximizerService:

    @staticmethod
    def maximize(function: Callable[[Any], Any], grid: np.ndarray) -> tuple[float, float]:
        grid = np.asarray(grid, dtype=float)
        if grid.size == 0:
            raise ValueError("Cannot maximize over an empty grid")

        values = np.asarray(function(grid), dtype=float)
        if np.all(np.isnan(values)):
            raise ValueError("Function is NaN on the whole grid")

        index = int(np.nanargmax(values))
        best_value, best_x = float(values[index]), float(grid[index])

        lower = float(grid[max(index - 1, 0)])
        upper = float(grid[min(index + 1, grid.size - 1)])
        if upper > lower:
            result = optimize.minimize_scalar(
                lambda x: -float(function(x)),
                bounds=(lower, upper),
                method="bounded",
                options={"xatol": FreeMaxAppConfig.refinement_xatol}
            )
            if result.success and -result.fun > best_value:
                best_value, best_x = float(-result.fun), float(result.x)

        logger.debug("Grid maximum %r at x=%r (grid of %d nodes)", best_value, best_x, grid.size)
        return best_value, best_x

    @staticmethod
    def geometric_grid(lower: float, upper: float, points: int) -> np.ndarray:
        width = upper - lower
        if not width > 0:
            raise ValueError(f"Empty interval ({lower}, {upper})")

        floor = min(FreeMaxAppConfig.grid_floor, 0.5 * width)
        return lower + np.geomspace(floor, width, points)

    @staticmethod
    def edge_refined_grid(lower: float, upper: float, points: int) -> np.ndarray:
        width = upper - lower
        if not width > 0:
            raise ValueError(f"Empty interval ({lower}, {upper})")

        band = FreeMaxAppConfig.weibull_edge_fraction * width
        band_points = max(2, int(points * FreeMaxAppConfig.weibull_edge_fraction * FreeMaxAppConfig.weibull_edge_density))
        offset = FreeMaxAppConfig.grid_floor * width

        interior = np.linspace(lower, upper, points + 2)[1:-1]
        left_band = lower + np.linspace(offset, band, band_points)
        right_band = upper - np.linspace(offset, band, band_points)
        # geometric approach to the edges, stopping grid_floor * width short of them
        left_edge = lower + np.geomspace(offset, band, band_points)
        right_edge = upper - np.geomspace(offset, band, band_points)

        grid = np.unique(np.concatenate([interior, left_band, right_band, left_edge, right_edge]))
        return grid[(grid > lower) & (grid < upper)]
