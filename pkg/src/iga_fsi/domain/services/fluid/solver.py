"""Explicit time marching of the DG flow solver."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities import FlowState
from iga_fsi.domain.services.fluid.gas import check_positivity, sound_speed
from iga_fsi.domain.services.numerics import rk4_step

if TYPE_CHECKING:
    from collections.abc import Callable

    from numpy.typing import NDArray

    from iga_fsi.domain.entities import MeshMotion
    from iga_fsi.domain.services.fluid.discretization import DGOperator
    from iga_fsi.domain.services.fluid.geometry import FlowGeometry

    type MotionProvider = Callable[[float], MeshMotion]

logger = logging.getLogger(__name__)


def stable_dt(
    operator: DGOperator,
    state: FlowState,
    geometry: FlowGeometry,
    velocities: NDArray[np.float64],
    cfl: float,
) -> float:
    """cfl * min_k h_k / ((2p+1) max_q (|u - v_mesh| + c)) over patches k."""
    w_q = operator.volume_values(state.w)
    v_q = operator.volume_values(velocities)
    relative = np.linalg.norm(w_q[..., 1:3] / w_q[..., 0, None] - v_q, axis=-1)
    speed = np.max(relative + sound_speed(w_q, operator.gas), axis=1)
    return float(cfl * np.min(geometry.size / ((2 * operator.degree + 1) * speed)))


def advance(
    operator: DGOperator,
    state: FlowState,
    motion: MotionProvider,
    dt: float,
) -> FlowState:
    """One RK4 step of d(M W)/dt = R with the mesh taken from `motion` at every stage time.

    Mass matrices are rebuilt and inverted at each stage; gradients are re-solved
    at each stage and once more for the returned state.

    Raises:
        PositivityError: the state became non-physical during the step.
        PatchTanglingError: a stage configuration is tangled.
    """
    configurations: dict[float, tuple[FlowGeometry, NDArray[np.float64]]] = {}

    def configuration(t: float) -> tuple[FlowGeometry, NDArray[np.float64]]:
        if t not in configurations:
            stage = motion(t)
            configurations[t] = (operator.geometry(stage.positions), stage.velocities)
        return configurations[t]

    def rhs(t: float, y: NDArray[np.float64]) -> NDArray[np.float64]:
        geometry, velocities = configuration(t)
        w = np.einsum("kab,kbc->kac", geometry.mass_inverse, y)
        residual, _ = operator.time_derivative(w, geometry, velocities, t)
        return residual

    t0 = state.time
    geometry0, _ = configuration(t0)
    y0 = np.einsum("kab,kbc->kac", geometry0.mass, state.w)
    y1 = rk4_step(rhs, y0, t0, dt)

    t1 = t0 + dt
    geometry1, velocities1 = configuration(t1)
    w1 = np.einsum("kab,kbc->kac", geometry1.mass_inverse, y1)
    check_positivity(operator.volume_values(w1), operator.gas)
    if operator.gas.is_viscous:
        g1 = operator.solve_gradients(w1, geometry1, velocities1, t1)
    else:
        g1 = np.zeros((*w1.shape, 2))
    return FlowState(w=w1, g=g1, time=t1)


def total_mass(operator: DGOperator, w: NDArray[np.float64], geometry: FlowGeometry) -> float:
    weighted = operator.tables.volume.weights * geometry.det
    return float(np.sum(weighted * operator.volume_values(w)[..., 0]))


def total_energy(operator: DGOperator, w: NDArray[np.float64], geometry: FlowGeometry) -> float:
    weighted = operator.tables.volume.weights * geometry.det
    return float(np.sum(weighted * operator.volume_values(w)[..., 3]))
