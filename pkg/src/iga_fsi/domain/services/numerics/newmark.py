"""Newmark time integration of M a + f(u) = F.

States are stored with their natural shape (vector for the membrane, (n, 2) for
the solid); the algebra runs on flattened copies restricted to the free DOFs.
Constrained DOFs stay at zero.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities import StructState
from iga_fsi.domain.services.numerics.linalg import CholeskyFactor, dense_solve, restrict
from iga_fsi.domain.services.numerics.newton import NewtonResult, newton_solve

if TYPE_CHECKING:
    from collections.abc import Callable

    from numpy.typing import NDArray

    from iga_fsi.domain.value_objects import NewmarkParams, NewtonSettings

type Vector = NDArray[np.float64]
type Matrix = NDArray[np.float64]
type InternalForce = Callable[[Vector], tuple[Vector, Matrix]]


def _free(n: int, free: NDArray[np.intp] | None) -> NDArray[np.intp]:
    return np.arange(n) if free is None else np.asarray(free, dtype=np.intp)


def predict(state: StructState, params: NewmarkParams) -> tuple[Vector, Vector]:
    """Displacement and velocity predictors (flattened)."""
    dt, beta, gamma = params.dt, params.beta, params.gamma
    u, v, a = state.u.ravel(), state.v.ravel(), state.a.ravel()
    u_star = u + dt * v + dt * dt * (0.5 - beta) * a
    v_star = v + (1.0 - gamma) * dt * a
    return u_star, v_star


def _correct(
    state: StructState, params: NewmarkParams, u_star: Vector, v_star: Vector, a_new: Vector
) -> StructState:
    dt = params.dt
    shape = state.u.shape
    u = u_star + params.beta * dt * dt * a_new
    v = v_star + params.gamma * dt * a_new
    return StructState(
        u=u.reshape(shape), v=v.reshape(shape), a=a_new.reshape(shape), time=state.time + dt
    )


def newmark_step(
    mass: Matrix,
    stiffness: Matrix,
    load: Vector,
    state: StructState,
    params: NewmarkParams,
    free: NDArray[np.intp] | None = None,
) -> StructState:
    """One step of M a + K u = F with constant K, solved exactly.

    (M + beta dt^2 K) a_{n+1} = F_{n+1} - K u*, then the Newmark correctors.
    The effective matrix is factorised by Cholesky.
    """
    n = state.u.size
    idx = _free(n, free)
    u_star, v_star = predict(state, params)
    effective = restrict(mass + params.beta * params.dt**2 * stiffness, idx)
    rhs = (np.ravel(load) - stiffness @ u_star)[idx]

    a_new = np.zeros(n)
    a_new[idx] = CholeskyFactor.of(effective).solve(rhs)
    u_star[np.setdiff1d(np.arange(n), idx)] = 0.0
    v_star[np.setdiff1d(np.arange(n), idx)] = 0.0
    return _correct(state, params, u_star, v_star, a_new)


def newmark_step_nonlinear(
    mass: Matrix,
    internal_force: InternalForce,
    load: Vector,
    state: StructState,
    params: NewmarkParams,
    settings: NewtonSettings | None = None,
    free: NDArray[np.intp] | None = None,
) -> tuple[StructState, NewtonResult]:
    """One step of M a + f_int(u) = F, Newton-Raphson on the free displacements.

    The unknown is u_{n+1}; a_{n+1} = (u_{n+1} - u*) / (beta dt^2).
    """
    n = state.u.size
    idx = _free(n, free)
    u_star, v_star = predict(state, params)
    c = 1.0 / (params.beta * params.dt**2)
    m_ff = restrict(mass, idx)
    f_ext = np.ravel(load)

    def full(u_free: Vector) -> Vector:
        u = np.zeros(n)
        u[idx] = u_free
        return u

    def residual(u_free: Vector) -> Vector:
        f_int, _ = internal_force(full(u_free))
        return m_ff @ (c * (u_free - u_star[idx])) + f_int[idx] - f_ext[idx]

    def tangent(u_free: Vector) -> Matrix:
        _, k_t = internal_force(full(u_free))
        return c * m_ff + restrict(k_t, idx)

    result = newton_solve(residual, tangent, u_star[idx], settings)
    u_new = full(result.solution)
    a_new = np.zeros(n)
    a_new[idx] = c * (result.solution - u_star[idx])
    v_star[np.setdiff1d(np.arange(n), idx)] = 0.0
    shape = state.u.shape
    v_new = v_star + params.gamma * params.dt * a_new
    new_state = StructState(
        u=u_new.reshape(shape),
        v=v_new.reshape(shape),
        a=a_new.reshape(shape),
        time=state.time + params.dt,
    )
    return new_state, result


def initial_acceleration(
    mass: Matrix,
    force: Vector,
    free: NDArray[np.intp] | None = None,
) -> Vector:
    """Acceleration consistent with M a0 = F0 - f_int(u0); `force` is the right-hand side."""
    n = mass.shape[0]
    idx = _free(n, free)
    a0 = np.zeros(n)
    a0[idx] = dense_solve(restrict(mass, idx), np.ravel(force)[idx])
    return a0
