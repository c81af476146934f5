from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import NewtonConvergenceError
from iga_fsi.domain.services.numerics.linalg import dense_solve
from iga_fsi.domain.value_objects import NewtonSettings

if TYPE_CHECKING:
    from collections.abc import Callable

    from numpy.typing import NDArray

logger = logging.getLogger(__name__)

MAX_LINE_SEARCH_HALVINGS = 10

type Vector = NDArray[np.float64]


@dataclass(frozen=True, slots=True, eq=False)
class NewtonResult:
    solution: Vector
    iterations: int
    residual_norms: tuple[float, ...]

    @property
    def final_norm(self) -> float:
        return self.residual_norms[-1]


def newton_solve(
    residual: Callable[[Vector], Vector],
    tangent: Callable[[Vector], NDArray[np.float64]],
    guess: Vector,
    settings: NewtonSettings | None = None,
) -> NewtonResult:
    """Solve residual(x) = 0 by Newton-Raphson.

    Converged when ||r|| <= tolerance * ||r0|| or ||r|| <= absolute_tolerance.
    With `line_search` the step is halved (at most 10 times) until the residual
    norm decreases.

    Raises:
        NewtonConvergenceError: iteration budget exhausted.
        SingularMatrixError: the tangent could not be factorised.
    """
    settings = settings or NewtonSettings()
    x = np.array(guess, dtype=np.float64)
    r = residual(x)
    r0 = float(np.linalg.norm(r))
    norms = [r0]
    if r0 == 0.0 or r0 <= settings.absolute_tolerance:
        return NewtonResult(x, 0, tuple(norms))

    target = max(settings.tolerance * r0, settings.absolute_tolerance)
    for iteration in range(1, settings.max_iterations + 1):
        dx = dense_solve(np.atleast_2d(tangent(x)), -r)
        dx = dx.reshape(x.shape)
        if settings.line_search:
            x, r = _backtrack(residual, x, dx, r)
        else:
            x = x + dx
            r = residual(x)
        norm = float(np.linalg.norm(r))
        norms.append(norm)
        logger.debug("Newton iteration %d: |r| = %.3e", iteration, norm)
        if norm <= target:
            return NewtonResult(x, iteration, tuple(norms))

    raise NewtonConvergenceError(
        f"Newton did not converge in {settings.max_iterations} iterations "
        f"(|r| = {norms[-1]:.3e}, |r0| = {r0:.3e})",
        iterations=settings.max_iterations,
        residual_norm=norms[-1],
    )


def _backtrack(
    residual: Callable[[Vector], Vector], x: Vector, dx: Vector, r: Vector
) -> tuple[Vector, Vector]:
    current = float(np.linalg.norm(r))
    step = 1.0
    for _ in range(MAX_LINE_SEARCH_HALVINGS + 1):
        trial = x + step * dx
        r_trial = residual(trial)
        if float(np.linalg.norm(r_trial)) < current:
            return trial, r_trial
        step *= 0.5
    return trial, r_trial
