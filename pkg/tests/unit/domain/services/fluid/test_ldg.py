"""Tests for the LDG face traces.

Tests cover:
- One-sided state trace and the jump penalty at a single face
- A 1D Poisson problem assembled from the same traces reproducing a linear solution
"""

import numpy as np
import pytest
from numpy.typing import ArrayLike, NDArray

from iga_fsi.domain.services.fluid import (
    conservative,
    ldg_fluxes,
    normal_component,
    penalty_coefficient,
    penalty_scales,
    viscous_flux,
)
from iga_fsi.domain.value_objects import GasModel

# 4/3 mu = 1: the x-momentum viscous flux of a shear-free 1D flow is du/dx
DIFFUSIVE = GasModel(mu=0.75)
INVISCID = GasModel()
ELEMENTS = 4
H = 1.0 / ELEMENTS
LEFT_VALUE, RIGHT_VALUE = 0.3, 1.7
NORMAL = np.array([[1.0, 0.0]])

# =============================================================================
# Fixtures
# =============================================================================


def _states(u: ArrayLike, q: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Unit-density states with velocity u and d(rho u)/dx = q."""
    velocity = np.atleast_1d(np.asarray(u, dtype=np.float64))
    w = conservative(1.0, velocity, 0.0, 1.0, DIFFUSIVE)
    g = np.zeros((*w.shape, 2))
    g[..., 1, 0] = q
    return w, g


def _poisson_residual(z: NDArray[np.float64]) -> NDArray[np.float64]:
    """Discrete -u'' = 0 on [0, 1] with linear elements and Dirichlet ends.

    Unknowns are nodal u then nodal q per element. Face terms use the same
    trace choice and penalty as the flow operator.
    """
    u = z[: 2 * ELEMENTS].reshape(ELEMENTS, 2)
    q = z[2 * ELEMENTS :].reshape(ELEMENTS, 2)
    points, weights = np.polynomial.legendre.leggauss(2)
    s = 0.5 * (points + 1.0)
    weights = 0.5 * H * weights
    phi = np.stack([1.0 - s, s])
    d_phi = np.array([-1.0, 1.0]) / H

    u_q, q_q = u @ phi, q @ phi
    w_q, g_q = _states(u_q.ravel(), q_q.ravel())
    flux_q = normal_component(viscous_flux(w_q, g_q, DIFFUSIVE), NORMAL[0])[:, 1]
    flux_q = flux_q.reshape(ELEMENTS, -1)

    mass = q_q @ (phi * weights).T
    gradient_rhs = -(u_q @ weights)[:, None] * d_phi[None, :]
    primary = -(flux_q @ weights)[:, None] * d_phi[None, :]

    eta = penalty_coefficient(1, np.array([H]))
    for e in range(ELEMENTS - 1):
        w_left, _ = _states(u[e, 1], 0.0)
        w_right, g_right = _states(u[e + 1, 0], q[e + 1, 0])
        trace, flux = ldg_fluxes(w_left, w_right, g_right, NORMAL, eta, DIFFUSIVE)
        gradient_rhs[e, 1] += trace[0, 1]
        gradient_rhs[e + 1, 0] -= trace[0, 1]
        primary[e, 1] += flux[0, 1]
        primary[e + 1, 0] -= flux[0, 1]

    for e, j, n, value in ((0, 0, -1.0, LEFT_VALUE), (ELEMENTS - 1, 1, 1.0, RIGHT_VALUE)):
        w_in, g_in = _states(u[e, j], q[e, j])
        w_b, _ = _states(value, 0.0)
        viscous = normal_component(viscous_flux(w_b, g_in, DIFFUSIVE), n * NORMAL)
        flux = viscous - eta[:, None] * penalty_scales(w_in, w_b, DIFFUSIVE) * (w_in - w_b)
        gradient_rhs[e, j] += value * n
        primary[e, j] += flux[0, 1]

    return np.concatenate([(mass - gradient_rhs).ravel(), primary.ravel()])


# =============================================================================
# Single face
# =============================================================================


class TestFaceTraces:
    def test_continuous_state_has_no_penalty(self) -> None:
        w, g = _states(0.4, 2.0)
        trace, flux = ldg_fluxes(w, w, g, NORMAL, np.array([10.0]), DIFFUSIVE)
        np.testing.assert_array_equal(trace, w)
        np.testing.assert_allclose(flux, normal_component(viscous_flux(w, g, DIFFUSIVE), NORMAL))
        assert flux[0, 1] == pytest.approx(2.0)

    def test_trace_comes_from_the_left_and_flux_from_the_right(self) -> None:
        w_left, _ = _states(0.2, 5.0)
        w_right, g_right = _states(0.6, 1.0)
        eta = np.array([8.0])
        trace, flux = ldg_fluxes(w_left, w_right, g_right, NORMAL, eta, DIFFUSIVE)
        np.testing.assert_array_equal(trace, w_left)
        assert flux[0, 1] == pytest.approx(1.0 - 8.0 * 0.75 * (0.2 - 0.6))

    def test_inviscid_gas_has_zero_viscous_trace_flux(self) -> None:
        w, g = _states(0.4, 2.0)
        _, flux = ldg_fluxes(w, w, g, NORMAL, np.array([10.0]), INVISCID)
        np.testing.assert_array_equal(flux, 0.0)

    def test_penalty_coefficient(self) -> None:
        np.testing.assert_allclose(penalty_coefficient(2, np.array([0.5, 0.25])), [18.0, 36.0])


# =============================================================================
# 1D Poisson problem
# =============================================================================


class TestPoissonProblem:
    def test_linear_solution_is_reproduced(self) -> None:
        size = 4 * ELEMENTS
        base = _poisson_residual(np.zeros(size))
        matrix = np.column_stack(
            [_poisson_residual(column) - base for column in np.eye(size)]
        )

        z = np.linalg.solve(matrix, -base)

        nodes = np.column_stack([np.arange(ELEMENTS), np.arange(1, ELEMENTS + 1)]) * H
        slope = RIGHT_VALUE - LEFT_VALUE
        np.testing.assert_allclose(
            z[: 2 * ELEMENTS], (LEFT_VALUE + slope * nodes).ravel(), atol=1e-12
        )
        np.testing.assert_allclose(z[2 * ELEMENTS :], slope, atol=1e-12)
