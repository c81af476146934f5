"""Tests for the dense solvers and Newton-Raphson."""

import numpy as np
import pytest

from iga_fsi.domain.exceptions import NewtonConvergenceError, SingularMatrixError
from iga_fsi.domain.services.numerics import (
    batched_inverse,
    cholesky_solve,
    dense_solve,
    newton_solve,
    restrict,
)
from iga_fsi.domain.value_objects import NewtonSettings

# =============================================================================
# Linear algebra
# =============================================================================


class TestLinearSolvers:
    def test_cholesky_solves_spd_system(self) -> None:
        matrix = np.array([[4.0, 1.0], [1.0, 3.0]])
        x = cholesky_solve(matrix, np.array([1.0, 2.0]))
        np.testing.assert_allclose(matrix @ x, [1.0, 2.0])

    def test_cholesky_rejects_indefinite_matrix(self) -> None:
        with pytest.raises(SingularMatrixError):
            cholesky_solve(np.array([[1.0, 0.0], [0.0, -1.0]]), np.ones(2))

    def test_dense_solve_rejects_singular_matrix(self) -> None:
        with pytest.raises(SingularMatrixError):
            dense_solve(np.ones((2, 2)), np.ones(2))

    def test_batched_inverse(self) -> None:
        blocks = np.array([[[2.0, 0.0], [0.0, 4.0]], [[1.0, 1.0], [0.0, 1.0]]])
        np.testing.assert_allclose(np.einsum("kij,kjl->kil", blocks, batched_inverse(blocks)),
                                   np.broadcast_to(np.eye(2), (2, 2, 2)), atol=1e-15)

    def test_restrict_keeps_free_rows_and_columns(self) -> None:
        matrix = np.arange(9.0).reshape(3, 3)
        np.testing.assert_array_equal(restrict(matrix, np.array([0, 2])), [[0, 2], [6, 8]])


# =============================================================================
# Newton-Raphson
# =============================================================================


def _cubic(x: np.ndarray) -> np.ndarray:
    return np.array([x[0] ** 3 - 8.0, x[1] - x[0]])


def _cubic_tangent(x: np.ndarray) -> np.ndarray:
    return np.array([[3.0 * x[0] ** 2, 0.0], [-1.0, 1.0]])


class TestNewton:
    def test_converges_quadratically(self) -> None:
        result = newton_solve(_cubic, _cubic_tangent, np.array([3.0, 0.0]))
        np.testing.assert_allclose(result.solution, [2.0, 2.0])
        assert result.final_norm <= 1e-10 * result.residual_norms[0]
        assert result.iterations <= 8

    def test_zero_initial_residual_returns_guess(self) -> None:
        result = newton_solve(_cubic, _cubic_tangent, np.array([2.0, 2.0]))
        assert result.iterations == 0

    def test_absolute_tolerance_stops_early(self) -> None:
        settings = NewtonSettings(tolerance=1e-14, absolute_tolerance=1e-2)
        result = newton_solve(_cubic, _cubic_tangent, np.array([3.0, 0.0]), settings)
        assert result.final_norm <= 1e-2
        assert result.final_norm > 1e-14 * result.residual_norms[0]

    def test_reports_exhausted_budget(self) -> None:
        settings = NewtonSettings(max_iterations=2)
        with pytest.raises(NewtonConvergenceError) as info:
            newton_solve(_cubic, _cubic_tangent, np.array([30.0, 0.0]), settings)
        assert info.value.iterations == 2
        assert info.value.residual_norm > 0.0

    def test_line_search_rescues_overshooting_step(self) -> None:
        def residual(x: np.ndarray) -> np.ndarray:
            return np.arctan(x)

        def tangent(x: np.ndarray) -> np.ndarray:
            return np.diag(1.0 / (1.0 + x**2))

        settings = NewtonSettings(line_search=True)
        result = newton_solve(residual, tangent, np.array([3.0]), settings)
        np.testing.assert_allclose(result.solution, [0.0], atol=1e-9)

    def test_singular_tangent_is_reported(self) -> None:
        with pytest.raises(SingularMatrixError):
            newton_solve(_cubic, lambda _x: np.zeros((2, 2)), np.array([3.0, 0.0]))
