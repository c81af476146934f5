from __future__ import annotations

from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import QuadratureOrderError
from iga_fsi.domain.value_objects import QuadratureRule

if TYPE_CHECKING:
    from numpy.typing import NDArray

MAX_POINTS = 16


@lru_cache(maxsize=MAX_POINTS)
def gauss_legendre(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule on [0, 1], exact for polynomials of degree 2n - 1."""
    if not 1 <= n <= MAX_POINTS:
        raise QuadratureOrderError(
            f"Gauss-Legendre point count must be in [1, {MAX_POINTS}], got {n}"
        )
    x, w = np.polynomial.legendre.leggauss(n)
    return QuadratureRule(points=0.5 * (x + 1.0), weights=0.5 * w)


@lru_cache(maxsize=MAX_POINTS)
def tensor_rule(n: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """n x n product rule on [0, 1]^2: points (n^2, 2) with xi outermost, weights (n^2,)."""
    rule = gauss_legendre(n)
    xi, eta = np.meshgrid(rule.points, rule.points, indexing="ij")
    points = np.column_stack([xi.ravel(), eta.ravel()])
    weights = np.outer(rule.weights, rule.weights).ravel()
    points.setflags(write=False)
    weights.setflags(write=False)
    return points, weights
