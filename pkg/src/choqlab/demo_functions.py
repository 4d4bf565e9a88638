"""Small built-in functions for demonstrating passing and failing axioms."""

from __future__ import annotations

from typing import Callable

import numpy as np


class BlackBox:
    """A named ``n``-place function of a vector."""

    def __init__(self, name: str, n: int, fn: Callable[[np.ndarray], float]):
        self.name = name
        self.n = n
        self._fn = fn

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"{self.name} takes vectors of length {self.n}")
        return float(self._fn(x))

    def __repr__(self) -> str:
        return f"BlackBox({self.name!r}, n={self.n})"


BUILTINS = {
    "min2": BlackBox("min2", 2, lambda x: min(x[0], x[1])),
    "max2": BlackBox("max2", 2, lambda x: max(x[0], x[1])),
    "product2": BlackBox("product2", 2, lambda x: x[0] * x[1]),
    "abs1": BlackBox("abs1", 1, lambda x: abs(x[0])),
}
