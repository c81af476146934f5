"""Tests for Saint Venant-Kirchhoff kinematics, stresses and the material tangent."""

import numpy as np
import pytest

from iga_fsi.domain.services.structure import (
    energy_density,
    first_piola,
    green_lagrange,
    material_tangent,
    pk2_stress,
)

LAMBDA, MU = 2.0e6, 0.5e6
F = np.array([[1.1, 0.2], [-0.05, 0.95]])


def _rotation(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


class TestKinematics:
    def test_rigid_rotation_is_strain_free(self) -> None:
        np.testing.assert_allclose(green_lagrange(_rotation(0.7)), 0.0, atol=1e-15)
        np.testing.assert_allclose(first_piola(_rotation(0.7), LAMBDA, MU), 0.0, atol=1e-9)

    def test_uniaxial_stretch(self) -> None:
        strain = green_lagrange(np.diag([1.2, 1.0]))
        np.testing.assert_allclose(strain, np.diag([0.22, 0.0]))
        stress = pk2_stress(strain, LAMBDA, MU)
        np.testing.assert_allclose(stress, np.diag([(LAMBDA + 2 * MU) * 0.22, LAMBDA * 0.22]))

    def test_broadcasts_over_leading_axes(self) -> None:
        stack = np.broadcast_to(F, (3, 4, 2, 2))
        assert first_piola(stack, LAMBDA, MU).shape == (3, 4, 2, 2)
        assert material_tangent(stack, LAMBDA, MU).shape == (3, 4, 2, 2, 2, 2)


class TestDerivatives:
    def test_piola_is_energy_gradient(self) -> None:
        h = 1e-6
        numeric = np.zeros((2, 2))
        for i in range(2):
            for j in range(2):
                step = np.zeros((2, 2))
                step[i, j] = h
                numeric[i, j] = (
                    energy_density(F + step, LAMBDA, MU) - energy_density(F - step, LAMBDA, MU)
                ) / (2 * h)
        np.testing.assert_allclose(first_piola(F, LAMBDA, MU), numeric, rtol=1e-6, atol=1e-3)

    def test_tangent_matches_finite_differences(self) -> None:
        h = 1e-6
        tangent = material_tangent(F, LAMBDA, MU)
        for k in range(2):
            for ell in range(2):
                step = np.zeros((2, 2))
                step[k, ell] = h
                numeric = first_piola(F + step, LAMBDA, MU) - first_piola(F - step, LAMBDA, MU)
                np.testing.assert_allclose(
                    tangent[:, :, k, ell], numeric / (2 * h), rtol=1e-6, atol=1e-3
                )

    def test_tangent_has_major_symmetry(self) -> None:
        tangent = material_tangent(F, LAMBDA, MU)
        np.testing.assert_allclose(tangent, tangent.transpose(2, 3, 0, 1), rtol=1e-12)

    def test_energy_of_uniaxial_stretch(self) -> None:
        w = energy_density(np.diag([1.2, 1.0]), LAMBDA, MU)
        assert float(w) == pytest.approx((0.5 * LAMBDA + MU) * 0.22**2)
