"""Tests for the Saint Venant-Kirchhoff solid.

Tests cover:
- Material constants and model validation
- Frame invariance of the internal force and exactness of its tangent
- Mass matrix, gravity load and strain energy against closed forms
- Initial state and the Newmark-Newton step with clamped control points
"""

import numpy as np
import pytest

from iga_fsi.domain.entities import HyperelasticModel, NurbsSurface, lame_from_young
from iga_fsi.domain.exceptions import ElementInversionError, StructureError
from iga_fsi.domain.services.structure import (
    gravity_load,
    hyperelastic_initial_state,
    hyperelastic_internal_force,
    hyperelastic_step,
    point_displacement,
    solid_mass_matrix,
    strain_energy,
)
from iga_fsi.domain.value_objects import NewmarkParams, Side
from tests.unit.domain.services.shapes import rectangle

LENGTH, HEIGHT = 0.35, 0.02
AREA = LENGTH * HEIGHT

# =============================================================================
# Fixtures
# =============================================================================


@pytest.fixture
def bar() -> NurbsSurface:
    return rectangle((0.0, 0.0, LENGTH, HEIGHT), elements=(4, 1))


@pytest.fixture
def model(bar: NurbsSurface) -> HyperelasticModel:
    return HyperelasticModel.from_young(bar, 1000.0, 1.4e6, 0.4, gravity=(0.0, -2.0))


def _affine(model: HyperelasticModel, matrix: np.ndarray) -> np.ndarray:
    """Displacements (x_new - x) of the map x -> matrix @ x for every control point."""
    points = model.surface.control_net.reshape(-1, 2)
    return points @ matrix.T - points


# =============================================================================
# Model
# =============================================================================


class TestModel:
    def test_lame_parameters(self) -> None:
        lam, mu = lame_from_young(1.4e6, 0.4)
        assert mu == pytest.approx(0.5e6)
        assert lam == pytest.approx(2.0e6)

    @pytest.mark.parametrize(("young", "poisson"), [(0.0, 0.3), (1.0, 0.5), (1.0, -1.0)])
    def test_rejects_invalid_constants(self, young: float, poisson: float) -> None:
        with pytest.raises(StructureError):
            lame_from_young(young, poisson)

    def test_rejects_clamped_and_loaded_side(self, bar: NurbsSurface) -> None:
        with pytest.raises(StructureError, match="both clamped and loaded"):
            HyperelasticModel(bar, 1.0, 1.0, 1.0, interface_sides=(Side.XI0,))

    def test_clamped_side_dofs(self, model: HyperelasticModel) -> None:
        n1, n2 = model.surface.shape
        assert model.dof_count == 2 * n1 * n2
        assert model.clamped_points.size == n2
        assert model.free_dofs.size == model.dof_count - 2 * n2


# =============================================================================
# Internal force
# =============================================================================


class TestInternalForce:
    def test_rigid_motion_is_stress_free(self, model: HyperelasticModel) -> None:
        c, s = np.cos(0.4), np.sin(0.4)
        u = _affine(model, np.array([[c, -s], [s, c]])) + np.array([0.01, -0.2])
        force, _ = hyperelastic_internal_force(model, u)
        np.testing.assert_allclose(force, 0.0, atol=1e-6)
        assert strain_energy(model, u) == pytest.approx(0.0, abs=1e-12)

    def test_tangent_matches_finite_differences(self, model: HyperelasticModel) -> None:
        rng = np.random.default_rng(3)
        u = 1e-3 * rng.standard_normal(model.state_shape)
        _, stiffness = hyperelastic_internal_force(model, u, tangent=True)
        assert stiffness is not None
        h = 1e-8
        for dof in (0, 7, model.dof_count - 1):
            step = np.zeros(model.dof_count)
            step[dof] = h
            plus, _ = hyperelastic_internal_force(model, u.ravel() + step)
            minus, _ = hyperelastic_internal_force(model, u.ravel() - step)
            np.testing.assert_allclose(
                stiffness[:, dof], (plus - minus) / (2 * h), rtol=1e-5, atol=1.0
            )

    def test_tangent_is_symmetric(self, model: HyperelasticModel) -> None:
        _, stiffness = hyperelastic_internal_force(model, np.zeros(model.state_shape), True)
        assert stiffness is not None
        np.testing.assert_allclose(stiffness, stiffness.T, rtol=1e-10, atol=1e-6)

    def test_uniform_stretch_energy(self, model: HyperelasticModel) -> None:
        u = _affine(model, np.diag([1.1, 1.0]))
        expected = (0.5 * model.lame_lambda + model.lame_mu) * 0.105**2 * AREA
        assert strain_energy(model, u) == pytest.approx(expected, rel=1e-12)

    def test_inverted_element_is_reported(self, model: HyperelasticModel) -> None:
        u = _affine(model, np.diag([-1.0, 1.0]))
        with pytest.raises(ElementInversionError, match="det F"):
            hyperelastic_internal_force(model, u)


# =============================================================================
# Mass and loads
# =============================================================================


class TestMassAndLoads:
    def test_mass_of_translation(self, model: HyperelasticModel) -> None:
        mass = solid_mass_matrix(model)
        translation = np.tile([1.0, 0.0], model.control_point_count)
        assert translation @ mass @ translation == pytest.approx(1000.0 * AREA)
        np.testing.assert_allclose(mass, mass.T)

    def test_gravity_totals_weight(self, model: HyperelasticModel) -> None:
        load = gravity_load(model)
        np.testing.assert_allclose(load.sum(axis=0), [0.0, -2.0 * 1000.0 * AREA])

    def test_point_displacement_of_translation(self, model: HyperelasticModel) -> None:
        u = np.tile([0.03, -0.01], (model.control_point_count, 1))
        np.testing.assert_allclose(point_displacement(model, u, 0.3, 0.8), [0.03, -0.01])


# =============================================================================
# Time stepping
# =============================================================================


class TestTimeStepping:
    def test_initial_state_clamps_and_balances(self, model: HyperelasticModel) -> None:
        u0 = np.full(model.state_shape, 1e-4)
        state = hyperelastic_initial_state(model, u0)
        np.testing.assert_array_equal(state.u[model.clamped_points], 0.0)
        np.testing.assert_array_equal(state.a[model.clamped_points], 0.0)
        assert state.u.shape == model.state_shape

    def test_step_under_gravity_sags(self, model: HyperelasticModel) -> None:
        state = hyperelastic_initial_state(model)
        params = NewmarkParams(dt=0.005)
        for _ in range(4):
            state, result = hyperelastic_step(model, state, None, params)
            assert result.iterations <= 6
        np.testing.assert_array_equal(state.u[model.clamped_points], 0.0)
        tip = point_displacement(model, state.u, 1.0, 0.5)
        assert tip[1] < 0.0
        assert state.time == pytest.approx(0.02)

    def test_traction_adds_to_gravity(self, model: HyperelasticModel) -> None:
        upward = np.zeros(model.state_shape)
        upward[:, 1] = 10.0
        resting = hyperelastic_initial_state(model)
        pushed = hyperelastic_initial_state(model, traction=upward)
        free = np.setdiff1d(np.arange(model.control_point_count), model.clamped_points)
        assert pushed.a[free, 1].sum() > resting.a[free, 1].sum()
