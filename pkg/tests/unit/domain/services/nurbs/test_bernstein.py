"""Tests for Bernstein tabulation and rational Bernstein bases."""

import numpy as np
import pytest

from iga_fsi.domain.services.nurbs import (
    bernstein,
    rational_curve_basis,
    rational_tables,
    tensor_bernstein,
)

T = np.linspace(0.0, 1.0, 7)


class TestBernstein:
    @pytest.mark.parametrize("p", [1, 2, 3, 4])
    def test_partition_of_unity(self, p: int) -> None:
        values = bernstein(p, T, order=2)
        np.testing.assert_allclose(values[0].sum(axis=1), 1.0)
        np.testing.assert_allclose(values[1].sum(axis=1), 0.0, atol=1e-12)
        np.testing.assert_allclose(values[2].sum(axis=1), 0.0, atol=1e-11)

    def test_linear_basis(self) -> None:
        np.testing.assert_allclose(bernstein(1, T)[0], np.column_stack([1 - T, T]))

    def test_quadratic_derivative(self) -> None:
        d = bernstein(2, [0.25], order=1)[1, 0]
        np.testing.assert_allclose(d, [-2 * 0.75, 2 * (0.75 - 0.25), 2 * 0.25])

    def test_orders_above_degree_vanish(self) -> None:
        np.testing.assert_array_equal(bernstein(2, T, order=3)[3], 0.0)


class TestRationalBases:
    def test_unit_weights_match_bernstein(self) -> None:
        np.testing.assert_allclose(
            rational_curve_basis(np.ones(4), T, order=1), bernstein(3, T, order=1)
        )

    def test_rational_curve_basis_sums_to_one(self) -> None:
        basis = rational_curve_basis(np.array([1.0, np.sqrt(0.5), 1.0]), T)
        np.testing.assert_allclose(basis[0].sum(axis=1), 1.0)
        np.testing.assert_allclose(basis[1].sum(axis=1), 0.0, atol=1e-12)

    def test_tensor_tables_are_c_ordered(self) -> None:
        values, grads = tensor_bernstein(2, [0.3], [0.6])
        bx, by = bernstein(2, [0.3])[0, 0], bernstein(2, [0.6])[0, 0]
        np.testing.assert_allclose(values[0], np.outer(bx, by).reshape(-1))
        assert grads.shape == (1, 9, 2)

    def test_rational_tables_partition_of_unity(self) -> None:
        values, grads = tensor_bernstein(2, T, T[::-1])
        weights = np.linspace(0.5, 1.5, 9).reshape(1, -1)
        r, dr = rational_tables(weights, values, grads)
        np.testing.assert_allclose(r.sum(axis=2), 1.0)
        np.testing.assert_allclose(dr.sum(axis=2), 0.0, atol=1e-12)
