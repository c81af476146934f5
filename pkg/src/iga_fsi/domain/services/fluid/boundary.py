"""Ghost and boundary states closing the face fluxes on the domain boundary.

Each function returns (ghost, boundary): `ghost` feeds the Riemann solver,
`boundary` is the trace used by the gradient and viscous fluxes.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.services.fluid.gas import conservative, primitive
from iga_fsi.domain.value_objects import (
    FarFieldCondition,
    InflowCondition,
    OutflowCondition,
    WallCondition,
)

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from iga_fsi.domain.value_objects import BoundaryCondition, GasModel

type States = tuple[NDArray[np.float64], NDArray[np.float64]]


def wall_states(
    w: NDArray[np.float64], wall_velocity: NDArray[np.float64], gas: GasModel
) -> States:
    """Mirror the velocity about the wall velocity; density and pressure copied."""
    rho, u, p = primitive(w, gas)
    mirrored = 2.0 * wall_velocity - u
    ghost = conservative(rho, mirrored[..., 0], mirrored[..., 1], p, gas)
    boundary = conservative(rho, wall_velocity[..., 0], wall_velocity[..., 1], p, gas)
    return ghost, boundary


def farfield_states(
    w: NDArray[np.float64],
    normal: NDArray[np.float64],
    condition: FarFieldCondition,
    gas: GasModel,
) -> States:
    """Characteristic state from the Riemann invariants along the outward normal."""
    g = gas.gamma
    rho_i, u_i, p_i = primitive(w, gas)
    c_i = np.sqrt(g * p_i / rho_i)
    un_i = np.einsum("...d,...d->...", u_i, normal)

    rho_o = condition.density
    u_o = np.broadcast_to(np.asarray(condition.velocity, dtype=np.float64), u_i.shape)
    p_o = condition.pressure
    c_o = np.sqrt(g * p_o / rho_o)
    un_o = np.einsum("...d,...d->...", u_o, normal)

    r_plus = un_i + 2.0 * c_i / (g - 1.0)
    r_minus = un_o - 2.0 * c_o / (g - 1.0)
    un_b = 0.5 * (r_plus + r_minus)
    c_b = 0.25 * (g - 1.0) * (r_plus - r_minus)

    outgoing = un_b > 0.0
    entropy = np.where(outgoing, p_i / rho_i**g, p_o / rho_o**g)
    tangential = np.where(
        outgoing[..., None], u_i - un_i[..., None] * normal, u_o - un_o[..., None] * normal
    )
    rho_b = (c_b * c_b / (g * entropy)) ** (1.0 / (g - 1.0))
    p_b = rho_b * c_b * c_b / g
    u_b = tangential + un_b[..., None] * normal
    state = conservative(rho_b, u_b[..., 0], u_b[..., 1], p_b, gas)

    far = conservative(rho_o, u_o[..., 0], u_o[..., 1], p_o, gas)
    state = np.where((un_o <= -c_o)[..., None], far, state)
    state = np.where((un_i >= c_i)[..., None], w, state)
    return state, state


def inflow_states(
    w: NDArray[np.float64],
    points: NDArray[np.float64],
    time: float,
    condition: InflowCondition,
    gas: GasModel,
) -> States:
    """Prescribed density and parabolic velocity, pressure extrapolated from inside."""
    _, _, p = primitive(w, gas)
    speed = np.array([condition.profile(float(y)) for y in points[..., 1].ravel()])
    speed = speed.reshape(p.shape) * condition.ramp(time)
    state = conservative(condition.density, speed, np.zeros_like(speed), p, gas)
    return state, state


def outflow_states(w: NDArray[np.float64], condition: OutflowCondition, gas: GasModel) -> States:
    """Interior density and velocity with the prescribed back pressure."""
    rho, u, _ = primitive(w, gas)
    state = conservative(rho, u[..., 0], u[..., 1], condition.pressure, gas)
    return state, state


def boundary_states(
    condition: BoundaryCondition,
    w: NDArray[np.float64],
    normal: NDArray[np.float64],
    wall_velocity: NDArray[np.float64],
    points: NDArray[np.float64],
    time: float,
    gas: GasModel,
) -> States:
    match condition:
        case WallCondition():
            return wall_states(w, wall_velocity, gas)
        case FarFieldCondition():
            return farfield_states(w, normal, condition, gas)
        case InflowCondition():
            return inflow_states(w, points, time, condition, gas)
        case OutflowCondition():
            return outflow_states(w, condition, gas)
    raise TypeError(f"Unsupported boundary condition {condition!r}")
