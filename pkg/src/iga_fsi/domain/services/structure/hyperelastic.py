"""Saint Venant-Kirchhoff solid: internal force, exact tangent and Newmark-Newton step."""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np
import scipy.sparse

from iga_fsi.domain.entities import StructState
from iga_fsi.domain.exceptions import ElementInversionError
from iga_fsi.domain.services.nurbs import eval_surface
from iga_fsi.domain.services.numerics import initial_acceleration, newmark_step_nonlinear
from iga_fsi.domain.services.structure.continuum import (
    energy_density,
    first_piola,
    material_tangent,
)
from iga_fsi.domain.services.structure.tabulation import SurfaceTable, surface_table

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.entities import HyperelasticModel
    from iga_fsi.domain.services.numerics import NewtonResult
    from iga_fsi.domain.value_objects import NewmarkParams, NewtonSettings

logger = logging.getLogger(__name__)


def _mass_table(model: HyperelasticModel) -> SurfaceTable:
    return surface_table(model.surface, max(model.surface.degrees) + 1)


def _force_table(model: HyperelasticModel) -> SurfaceTable:
    return surface_table(model.surface, max(model.surface.degrees) + 2)


def _dofs(conn: NDArray[np.intp]) -> NDArray[np.intp]:
    """(E, nloc) control point indices -> (E, 2 nloc) interleaved DOF indices."""
    return (2 * conn[:, :, None] + np.arange(2)).reshape(conn.shape[0], -1)


def deformation_gradients(
    table: SurfaceTable, u: NDArray[np.float64]
) -> NDArray[np.float64]:
    """F = I + sum_a u_a (x) grad R_a at every quadrature point, shape (E, q, 2, 2)."""
    u_loc = u[table.conn]
    return np.eye(2) + np.einsum("eai,eqaJ->eqiJ", u_loc, table.grad)


def _checked_gradients(table: SurfaceTable, u: NDArray[np.float64]) -> NDArray[np.float64]:
    f = deformation_gradients(table, u)
    det = np.linalg.det(f)
    if np.any(det <= 0.0):
        elements = np.unique(np.nonzero(det <= 0.0)[0])
        raise ElementInversionError(
            f"det F <= 0 in {elements.size} element(s), min det F = {det.min():.3e}"
        )
    return f


def hyperelastic_internal_force(
    model: HyperelasticModel, u: ArrayLike, tangent: bool = False
) -> tuple[NDArray[np.float64], NDArray[np.float64] | None]:
    """Internal force vector (interleaved DOFs) and optionally its exact derivative.

    Raises:
        ElementInversionError: det F <= 0 at some quadrature point.
    """
    table = _force_table(model)
    disp = np.asarray(u, dtype=np.float64).reshape(-1, 2)
    f = _checked_gradients(table, disp)
    lam, mu = model.lame_lambda, model.lame_mu
    n = model.dof_count
    dofs = _dofs(table.conn)

    piola = first_piola(f, lam, mu)
    local = np.einsum("eq,eqiJ,eqaJ->eai", table.weights, piola, table.grad)
    force = np.bincount(dofs.ravel(), weights=local.reshape(dofs.shape).ravel(), minlength=n)
    if not tangent:
        return force, None

    a_tensor = material_tangent(f, lam, mu)
    k_local = np.einsum(
        "eq,eqaJ,eqiJkL,eqbL->eaibk", table.weights, table.grad, a_tensor, table.grad
    ).reshape(dofs.shape[0], dofs.shape[1], dofs.shape[1])
    rows = np.broadcast_to(dofs[:, :, None], k_local.shape).ravel()
    cols = np.broadcast_to(dofs[:, None, :], k_local.shape).ravel()
    stiffness = scipy.sparse.coo_matrix((k_local.ravel(), (rows, cols)), shape=(n, n)).toarray()
    return force, stiffness


def strain_energy(model: HyperelasticModel, u: ArrayLike) -> float:
    table = _force_table(model)
    f = _checked_gradients(table, np.asarray(u, dtype=np.float64).reshape(-1, 2))
    return float(np.sum(table.weights * energy_density(f, model.lame_lambda, model.lame_mu)))


@lru_cache(maxsize=8)
def solid_mass_matrix(model: HyperelasticModel) -> NDArray[np.float64]:
    """Consistent mass, rho R_a R_b on each displacement component."""
    table = _mass_table(model)
    local = model.density * np.einsum("eq,eqa,eqb->eab", table.weights, table.basis, table.basis)
    n = model.control_point_count
    rows = np.broadcast_to(table.conn[:, :, None], local.shape).ravel()
    cols = np.broadcast_to(table.conn[:, None, :], local.shape).ravel()
    scalar = scipy.sparse.coo_matrix((local.ravel(), (rows, cols)), shape=(n, n))
    mass = scipy.sparse.kron(scalar, np.eye(2)).toarray()
    mass.setflags(write=False)
    return mass


def gravity_load(model: HyperelasticModel) -> NDArray[np.float64]:
    """Body force rho g R_a, shape (n_cp, 2)."""
    table = _mass_table(model)
    local = model.density * np.einsum("eq,eqa->ea", table.weights, table.basis)
    n = model.control_point_count
    integral = np.bincount(table.conn.ravel(), weights=local.ravel(), minlength=n)
    return np.outer(integral, np.asarray(model.gravity, dtype=np.float64))


def _total_load(model: HyperelasticModel, traction: ArrayLike | None) -> NDArray[np.float64]:
    load = gravity_load(model)
    if traction is not None:
        load = load + np.asarray(traction, dtype=np.float64).reshape(-1, 2)
    return load.ravel()


def hyperelastic_initial_state(
    model: HyperelasticModel,
    u0: ArrayLike | None = None,
    v0: ArrayLike | None = None,
    traction: ArrayLike | None = None,
    time: float = 0.0,
) -> StructState:
    """State whose acceleration solves M a0 = F0 - f_int(u0)."""
    shape = model.state_shape
    u = np.zeros(shape) if u0 is None else np.array(u0, dtype=np.float64).reshape(shape)
    v = np.zeros(shape) if v0 is None else np.array(v0, dtype=np.float64).reshape(shape)
    clamped = model.clamped_points
    u[clamped] = 0.0
    v[clamped] = 0.0
    f_int, _ = hyperelastic_internal_force(model, u)
    rhs = _total_load(model, traction) - f_int
    a = initial_acceleration(solid_mass_matrix(model), rhs, model.free_dofs)
    return StructState(u=u, v=v, a=a.reshape(shape), time=time)


def hyperelastic_step(
    model: HyperelasticModel,
    state: StructState,
    traction: ArrayLike | None,
    params: NewmarkParams,
    settings: NewtonSettings | None = None,
) -> tuple[StructState, NewtonResult]:
    """One Newmark step of M U'' + f_int(U) = F_traction + F_gravity, Newton on U.

    Raises:
        NewtonConvergenceError: the step did not converge; the caller keeps the old state.
        ElementInversionError: an iterate inverted an element.
    """
    last: dict[bytes, tuple[NDArray[np.float64], NDArray[np.float64]]] = {}

    def internal(u_full: NDArray[np.float64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        key = u_full.tobytes()
        if key not in last:
            force, stiffness = hyperelastic_internal_force(model, u_full, tangent=True)
            assert stiffness is not None
            last.clear()
            last[key] = (force, stiffness)
        return last[key]

    new_state, result = newmark_step_nonlinear(
        solid_mass_matrix(model),
        internal,
        _total_load(model, traction),
        state,
        params,
        settings,
        model.free_dofs,
    )
    logger.debug(
        "Solid step t=%.6g converged in %d iterations (|r|=%.3e)",
        new_state.time,
        result.iterations,
        result.final_norm,
    )
    return new_state, result


def point_displacement(
    model: HyperelasticModel, u: ArrayLike, xi: float, eta: float
) -> NDArray[np.float64]:
    """Displacement of the material point at reference parameters (xi, eta)."""
    deformed = model.deformed_surface(np.asarray(u, dtype=np.float64))
    return eval_surface(deformed, xi, eta) - eval_surface(model.surface, xi, eta)
