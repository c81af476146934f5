"""Tests for Newmark and Runge-Kutta time integration.

Tests cover:
- Energy conservation of the average-acceleration scheme for a linear oscillator
- Nonlinear step agreeing with the linear step for a linear internal force
- Constrained DOFs staying at zero
- Fourth-order accuracy of the Runge-Kutta step and its stage callbacks
"""

import math

import numpy as np
import pytest

from iga_fsi.domain.entities import StructState
from iga_fsi.domain.services.numerics import (
    RK4_STAGE_FRACTIONS,
    initial_acceleration,
    newmark_step,
    newmark_step_nonlinear,
    rk4_step,
)
from iga_fsi.domain.value_objects import NewmarkParams

# =============================================================================
# Fixtures
# =============================================================================

OMEGA = 2.0 * math.pi


@pytest.fixture
def mass() -> np.ndarray:
    return np.diag([1.0, 2.0, 1.0])


@pytest.fixture
def stiffness() -> np.ndarray:
    return OMEGA**2 * np.array([[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]])


@pytest.fixture
def displaced() -> StructState:
    return StructState(u=np.array([0.1, 0.0, -0.05]), v=np.zeros(3), a=np.zeros(3))


def _energy(mass: np.ndarray, stiffness: np.ndarray, state: StructState) -> float:
    return 0.5 * state.v @ mass @ state.v + 0.5 * state.u @ stiffness @ state.u


# =============================================================================
# Newmark
# =============================================================================


class TestNewmark:
    def test_average_acceleration_conserves_energy(
        self, mass: np.ndarray, stiffness: np.ndarray, displaced: StructState
    ) -> None:
        a0 = initial_acceleration(mass, -stiffness @ displaced.u)
        state = displaced.with_acceleration(a0)
        params = NewmarkParams(dt=0.01)
        initial = _energy(mass, stiffness, state)
        for _ in range(200):
            state = newmark_step(mass, stiffness, np.zeros(3), state, params)
        assert _energy(mass, stiffness, state) == pytest.approx(initial, rel=1e-10)
        assert state.time == pytest.approx(2.0)

    def test_nonlinear_step_matches_linear_step(
        self, mass: np.ndarray, stiffness: np.ndarray, displaced: StructState
    ) -> None:
        params = NewmarkParams(dt=0.02)
        load = np.array([0.0, 1.0, 0.0])

        def internal(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
            return stiffness @ u, stiffness

        linear = newmark_step(mass, stiffness, load, displaced, params)
        nonlinear, result = newmark_step_nonlinear(mass, internal, load, displaced, params)
        np.testing.assert_allclose(nonlinear.u, linear.u, atol=1e-12)
        np.testing.assert_allclose(nonlinear.v, linear.v, atol=1e-10)
        assert result.iterations == 1

    def test_constrained_dofs_stay_zero(
        self, mass: np.ndarray, stiffness: np.ndarray
    ) -> None:
        state = StructState(u=np.array([0.0, 0.1, 0.0]), v=np.zeros(3), a=np.zeros(3))
        free = np.array([1])
        for _ in range(5):
            state = newmark_step(mass, stiffness, np.ones(3), state, NewmarkParams(0.01), free)
        assert state.u[0] == 0.0
        assert state.u[2] == 0.0
        assert state.v[0] == 0.0

    def test_initial_acceleration_solves_free_rows(self, mass: np.ndarray) -> None:
        a0 = initial_acceleration(mass, np.array([1.0, 4.0, 1.0]), free=np.array([1, 2]))
        np.testing.assert_allclose(a0, [0.0, 2.0, 1.0])

    def test_natural_period_of_single_oscillator(self) -> None:
        m, k = np.eye(1), np.array([[OMEGA**2]])
        state = StructState(u=np.array([1.0]), v=np.zeros(1), a=np.array([-(OMEGA**2)]))
        for _ in range(1000):
            state = newmark_step(m, k, np.zeros(1), state, NewmarkParams(dt=0.001))
        assert state.u[0] == pytest.approx(1.0, abs=1e-4)


# =============================================================================
# Runge-Kutta
# =============================================================================


class TestRungeKutta:
    def test_fourth_order_convergence(self) -> None:
        def error(steps: int) -> float:
            y, dt = np.array([1.0]), 1.0 / steps
            for n in range(steps):
                y = rk4_step(lambda t, y: -y, y, n * dt, dt)
            return abs(float(y[0]) - math.exp(-1.0))

        assert error(10) < 1e-6
        assert error(10) / error(20) == pytest.approx(16.0, rel=0.1)
        assert error(20) / error(40) == pytest.approx(16.0, rel=0.05)

    def test_stage_callback_sees_stage_times(self) -> None:
        seen: list[float] = []
        rk4_step(lambda t, y: y, np.zeros(1), 1.0, 0.5, on_stage=seen.append)
        assert seen == [1.0 + 0.5 * f for f in RK4_STAGE_FRACTIONS]
