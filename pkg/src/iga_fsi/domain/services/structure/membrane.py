"""Isogeometric membrane: tension, Galerkin matrices and the Newmark step.

The DOFs are the transverse displacements of the control points; the
x-parameterisation is fixed, so |J| = |dx/dxi| never changes. The stiffness
depends on the current tension and is frozen at the previous step when
marching, which turns each step into a linear solve.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np
import scipy.sparse

from iga_fsi.domain.entities import StructState
from iga_fsi.domain.exceptions import PatchTanglingError, StructureError
from iga_fsi.domain.services.nurbs import eval_nurbs_basis
from iga_fsi.domain.services.numerics import (
    cholesky_solve,
    initial_acceleration,
    newmark_step,
    restrict,
)
from iga_fsi.domain.services.structure.tabulation import CurveTable, curve_table

if TYPE_CHECKING:
    from collections.abc import Callable

    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.entities import MembraneModel
    from iga_fsi.domain.value_objects import NewmarkParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class MembraneSystem:
    """Full (unconstrained) membrane matrices at one tension.

    Attributes:
        mass: rho h R_j R_i |J| integrated.
        stiffness: T R_j' R_i' / |J| integrated.
        unit_load: R_j |J| integrated, the load vector of a unit pressure jump.
        tension: T used for the stiffness.
    """

    mass: NDArray[np.float64]
    stiffness: NDArray[np.float64]
    unit_load: NDArray[np.float64]
    tension: float


def _mass_table(model: MembraneModel) -> CurveTable:
    return curve_table(model.curve, model.curve.degree + 1)


def _length_table(model: MembraneModel) -> CurveTable:
    return curve_table(model.curve, model.curve.degree + 3)


def _dx(model: MembraneModel, table: CurveTable) -> NDArray[np.float64]:
    x = model.curve.control_points[:, 0]
    jac = np.einsum("eqa,ea->eq", table.d_basis, x[table.conn])
    if np.any(jac <= 0.0):
        raise PatchTanglingError("Membrane x-parameterisation has a non-positive Jacobian")
    return jac


def _scatter(conn: NDArray[np.intp], local: NDArray[np.float64], n: int) -> NDArray[np.float64]:
    rows = np.broadcast_to(conn[:, :, None], local.shape).ravel()
    cols = np.broadcast_to(conn[:, None, :], local.shape).ravel()
    return scipy.sparse.coo_matrix((local.ravel(), (rows, cols)), shape=(n, n)).toarray()


def arc_length(model: MembraneModel, u: ArrayLike) -> float:
    """Length of the deformed membrane, Gauss quadrature with p+3 points per span."""
    table = _length_table(model)
    dx = _dx(model, table)
    y = np.asarray(u, dtype=np.float64)
    dy = np.einsum("eqa,ea->eq", table.d_basis, y[table.conn])
    return float(np.sum(table.weights * np.hypot(dx, dy)))


def membrane_tension(model: MembraneModel, u: ArrayLike) -> float:
    """T = T0 + E h (length - L)."""
    stretch = arc_length(model, u) - model.span
    return model.pretension + model.young * model.thickness * stretch


@lru_cache(maxsize=16)
def _base_matrices(
    model: MembraneModel,
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Mass, unit-tension stiffness and unit load; independent of the state."""
    table = _mass_table(model)
    jac = _dx(model, table)
    n = model.dof_count
    w = table.weights
    mass_local = model.density * model.thickness * np.einsum(
        "eq,eqa,eqb->eab", w * jac, table.basis, table.basis
    )
    stiff_local = np.einsum("eq,eqa,eqb->eab", w / jac, table.d_basis, table.d_basis)
    load_local = np.einsum("eq,eqa->ea", w * jac, table.basis)

    mass = _scatter(table.conn, mass_local, n)
    stiffness = _scatter(table.conn, stiff_local, n)
    unit_load = np.bincount(table.conn.ravel(), weights=load_local.ravel(), minlength=n)
    for array in (mass, stiffness, unit_load):
        array.setflags(write=False)
    return mass, stiffness, unit_load


def assemble_membrane(
    model: MembraneModel, u: ArrayLike | None = None, tension: float | None = None
) -> MembraneSystem:
    """Matrices at the tension of displacement u (or at an explicitly frozen tension)."""
    if tension is None:
        tension = membrane_tension(model, np.zeros(model.dof_count) if u is None else u)
    mass, unit_stiffness, unit_load = _base_matrices(model)
    return MembraneSystem(
        mass=mass, stiffness=tension * unit_stiffness, unit_load=unit_load, tension=tension
    )


def pressure_load(
    model: MembraneModel,
    pressure_jump: float | Callable[[NDArray[np.float64]], NDArray[np.float64]],
) -> NDArray[np.float64]:
    """Load vector of a prescribed pressure jump, constant or a function of x."""
    if not callable(pressure_jump):
        return float(pressure_jump) * _base_matrices(model)[2]
    table = _mass_table(model)
    jac = _dx(model, table)
    x = np.einsum("eqa,ea->eq", table.basis, model.curve.control_points[table.conn, 0])
    dp = np.asarray(pressure_jump(x), dtype=np.float64)
    local = np.einsum("eq,eqa->ea", table.weights * jac * dp, table.basis)
    return np.bincount(table.conn.ravel(), weights=local.ravel(), minlength=model.dof_count)


def membrane_static(
    model: MembraneModel, load: ArrayLike, tension: float | None = None
) -> NDArray[np.float64]:
    """Solve K(T) y = F on the free DOFs with T frozen (default: flat-membrane tension)."""
    system = assemble_membrane(model, tension=tension)
    if system.tension <= 0.0:
        raise StructureError(
            f"Static membrane solve needs a positive tension, got {system.tension}"
        )
    free = model.free_dofs
    y = np.zeros(model.dof_count)
    y[free] = cholesky_solve(restrict(system.stiffness, free), np.asarray(load)[free])
    return y


def membrane_initial_state(
    model: MembraneModel,
    u0: ArrayLike | None = None,
    v0: ArrayLike | None = None,
    load: ArrayLike | None = None,
    time: float = 0.0,
) -> StructState:
    """State with the acceleration that satisfies the equation of motion at t0."""
    n = model.dof_count
    u = np.zeros(n) if u0 is None else np.array(u0, dtype=np.float64)
    v = np.zeros(n) if v0 is None else np.array(v0, dtype=np.float64)
    f = np.zeros(n) if load is None else np.asarray(load, dtype=np.float64)
    u[model.constrained_dofs] = 0.0
    v[model.constrained_dofs] = 0.0
    system = assemble_membrane(model, u)
    a = initial_acceleration(system.mass, f - system.stiffness @ u, model.free_dofs)
    return StructState(u=u, v=v, a=a, time=time)


def membrane_step(
    model: MembraneModel,
    state: StructState,
    load: ArrayLike,
    params: NewmarkParams,
    tension: float | None = None,
) -> StructState:
    """One Newmark step of M Y'' + K(T_n) Y = F_{n+1}.

    The tension is taken at the previous state unless given explicitly.
    """
    system = assemble_membrane(model, state.u, tension)
    logger.debug("Membrane step t=%.6g tension=%.6g", state.time, system.tension)
    return newmark_step(
        system.mass,
        system.stiffness,
        np.asarray(load, dtype=np.float64),
        state,
        params,
        model.free_dofs,
    )


def membrane_energy(
    model: MembraneModel, state: StructState, tension: float | None = None
) -> float:
    """Kinetic plus stored energy.

    With a frozen tension the stored part is the quadratic form u K(T) u / 2
    conserved by the linear scheme; otherwise it is the elastic energy
    T0 delta + E h delta^2 / 2 of the stretched membrane.
    """
    mass, unit_stiffness, _ = _base_matrices(model)
    kinetic = 0.5 * float(state.v @ mass @ state.v)
    if tension is not None:
        return kinetic + 0.5 * tension * float(state.u @ unit_stiffness @ state.u)
    delta = arc_length(model, state.u) - model.span
    stored = model.pretension * delta + 0.5 * model.young * model.thickness * delta**2
    return kinetic + stored


def membrane_deflection(
    model: MembraneModel, u: ArrayLike, xi: float | ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Physical points (x, y) of the deformed membrane at parameters xi."""
    curve = model.curve
    y_cp = np.asarray(u, dtype=np.float64)
    params = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    p = curve.degree
    xs = np.empty(params.size)
    ys = np.empty(params.size)
    for k, t in enumerate(params):
        span, values = eval_nurbs_basis(curve.knot_vector, curve.weights, float(t))
        local = slice(span - p, span + 1)
        xs[k] = values[0] @ curve.control_points[local, 0]
        ys[k] = values[0] @ y_cp[local]
    return xs, ys
