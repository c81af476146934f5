"""Boundary tractions, integrated forces and pressure coefficients."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.services.fluid.fluxes import velocity_gradients, viscous_stress
from iga_fsi.domain.services.fluid.gas import pressure

if TYPE_CHECKING:
    from collections.abc import Iterable

    from numpy.typing import NDArray

    from iga_fsi.domain.entities import FlowState
    from iga_fsi.domain.services.fluid.discretization import DGOperator
    from iga_fsi.domain.services.fluid.geometry import FlowGeometry


def boundary_traction(
    operator: DGOperator,
    state: FlowState,
    geometry: FlowGeometry,
    velocities: NDArray[np.float64],
) -> NDArray[np.float64]:
    """Traction exerted by the fluid on the boundary, (p I - tau) . n at every boundary point.

    n is the outward normal of the fluid domain, so this is the force per unit
    length acting on a body bounding the flow.
    """
    traces = operator.boundary_traces(state.w, state.g, geometry, velocities, state.time)
    w_b = traces.boundary
    normal = geometry.boundary_normals
    traction = pressure(w_b, operator.gas)[:, None] * normal
    if operator.gas.is_viscous:
        grad_u, _ = velocity_gradients(w_b, traces.g_inside)
        tau = viscous_stress(grad_u, operator.gas)
        traction -= np.einsum("fij,fj->fi", tau, normal)
    return traction


def integrated_force(
    operator: DGOperator,
    state: FlowState,
    geometry: FlowGeometry,
    velocities: NDArray[np.float64],
    tags: Iterable[str],
) -> NDArray[np.float64]:
    """Force on the bodies bounded by the tagged boundaries, integral of (-p I + tau) . n_body."""
    traction = boundary_traction(operator, state, geometry, velocities)
    bnd = operator.tables.boundary
    idx = np.concatenate([bnd.points_of(tag) for tag in tags] or [np.zeros(0, dtype=np.intp)])
    return np.einsum("f,fd->d", geometry.boundary_measure[idx], traction[idx])


def force_coefficients(
    force: NDArray[np.float64],
    density: float,
    speed: float,
    length: float,
    alpha_deg: float = 0.0,
) -> tuple[float, float]:
    """(C_D, C_L) = 2 F / (rho U^2 L) projected on the free-stream and its normal."""
    alpha = math.radians(alpha_deg)
    drag_axis = np.array([math.cos(alpha), math.sin(alpha)])
    lift_axis = np.array([-math.sin(alpha), math.cos(alpha)])
    scale = 2.0 / (density * speed * speed * length)
    return float(scale * force @ drag_axis), float(scale * force @ lift_axis)


def pressure_coefficient(
    operator: DGOperator,
    state: FlowState,
    geometry: FlowGeometry,
    velocities: NDArray[np.float64],
    tag: str,
    reference: tuple[float, float, float],
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Boundary points, outward normals and C_p = (p - p_ref) / (rho_ref U_ref^2 / 2) on a tag.

    `reference` is (p_ref, rho_ref, U_ref).
    """
    p_ref, rho_ref, u_ref = reference
    traces = operator.boundary_traces(state.w, state.g, geometry, velocities, state.time)
    idx = operator.tables.boundary.points_of(tag)
    p = pressure(traces.boundary[idx], operator.gas)
    cp = (p - p_ref) / (0.5 * rho_ref * u_ref * u_ref)
    return geometry.boundary_points[idx], geometry.boundary_normals[idx], cp
