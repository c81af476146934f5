from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Callable

    import numpy as np
    from numpy.typing import NDArray

type Array = NDArray[np.float64]

RK4_STAGE_FRACTIONS = (0.0, 0.5, 0.5, 1.0)


def rk4_step(
    rhs: Callable[[float, Array], Array],
    y: Array,
    t: float,
    dt: float,
    on_stage: Callable[[float], None] | None = None,
) -> Array:
    """Classical four-stage Runge-Kutta step for dy/dt = rhs(t, y).

    `on_stage(t_stage)` runs before each right-hand side evaluation, so that
    time-dependent geometry can be brought to the stage time.
    """

    def stage(tau: float, y_stage: Array) -> Array:
        if on_stage is not None:
            on_stage(tau)
        return rhs(tau, y_stage)

    half = 0.5 * dt
    k1 = stage(t, y)
    k2 = stage(t + half, y + half * k1)
    k3 = stage(t + half, y + half * k2)
    k4 = stage(t + dt, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
