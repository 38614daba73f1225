from typing import Any, Callable

import numpy as np


def vectorized(function: Callable[[np.ndarray], np.ndarray]) -> Callable[[Any], Any]:
    def evaluate(x: Any) -> Any:
        array = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
            result = function(array)
        if array.ndim == 0:
            return float(result)
        return result

    return evaluate


def as_result(value: Any) -> Any:
    if np.ndim(value) == 0:
        return float(value)
    return value
