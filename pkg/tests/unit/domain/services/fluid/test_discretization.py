"""Tests for the DG operator, explicit time marching and boundary loads.

Tests cover:
- Free-stream preservation on conforming and hanging-face meshes
- Gradient recovery: constants give zero, linear density gives its slope
- Hanging faces: shared quadrature points and balanced sub-edge fluxes
- Uniform mesh translation leaving a uniform flow untouched
- Independence from the patch map and chunking
- Mass conservation inside a closed box
- Integrated wall forces, force coefficients and pressure coefficients
"""

from collections.abc import Callable, Sequence

import numpy as np
import pytest
from numpy.typing import NDArray

from iga_fsi.domain.entities import FlowState, MeshMotion, MultiPatchMesh
from iga_fsi.domain.exceptions import FlowError
from iga_fsi.domain.services.fluid import (
    DGOperator,
    advance,
    conservative,
    force_coefficients,
    integrated_force,
    pressure_coefficient,
    stable_dt,
    total_mass,
)
from iga_fsi.domain.services.mesh import build_fluid_mesh
from iga_fsi.domain.value_objects import (
    FarFieldCondition,
    GasModel,
    RefinementPlan,
    RefinementRule,
    Side,
    WallCondition,
)
from tests.unit.domain.services.shapes import rectangle, tagged

AIR = GasModel()
VISCOUS = GasModel(mu=0.01)
FAR = FarFieldCondition(1.0, (0.3, 0.1), 1.0 / 1.4)
W_FAR = conservative(1.0, 0.3, 0.1, 1.0 / 1.4, AIR)
W_REST = conservative(1.0, 0.0, 0.0, 2.0, AIR)

# =============================================================================
# Fixtures
# =============================================================================


def _mesh(tags: dict[tuple[int, Side], str], refined: bool = False) -> MultiPatchMesh:
    plan = None
    if refined:
        plan = RefinementPlan((RefinementRule(levels=1, box=(0.0, 0.0, 0.5, 0.5)),))
    return build_fluid_mesh([rectangle((0.0, 0.0, 1.0, 1.0), elements=(2, 2))], tags, plan)


def _uniform(mesh: MultiPatchMesh, w0: np.ndarray) -> FlowState:
    return FlowState.uniform(mesh.patch_count, mesh.basis_size, w0)


@pytest.fixture(params=[False, True], ids=["conforming", "hanging"])
def farfield_operator(request: pytest.FixtureRequest) -> DGOperator:
    return DGOperator(_mesh(tagged(0, "farfield"), request.param), VISCOUS, {"farfield": FAR})


@pytest.fixture
def box_operator() -> DGOperator:
    tags = tagged(0, "wall", Side.XI0) | {(0, Side.XI0): "left"}
    conditions = {"wall": WallCondition(), "left": WallCondition()}
    return DGOperator(_mesh(tags, refined=True), AIR, conditions)


@pytest.fixture(params=[False, True], ids=["conforming", "hanging"])
def gradient_operator(request: pytest.FixtureRequest) -> DGOperator:
    plan = None
    if request.param:
        plan = RefinementPlan((RefinementRule(levels=1, box=(0.0, 0.0, 0.5, 0.5)),))
    surface = rectangle((0.0, 0.0, 1.0, 1.0), elements=(4, 4))
    mesh = build_fluid_mesh([surface], tagged(0, "farfield"), plan)
    return DGOperator(mesh, VISCOUS, {"farfield": FAR})


@pytest.fixture
def split_operator() -> DGOperator:
    """One coarse patch against the four children of its right neighbour."""
    plan = RefinementPlan((RefinementRule(levels=1, box=(1.0, 0.0, 2.0, 1.0)),))
    surface = rectangle((0.0, 0.0, 2.0, 1.0), elements=(2, 1))
    mesh = build_fluid_mesh([surface], tagged(0, "wall"), plan)
    return DGOperator(mesh, AIR, {"wall": WallCondition()})


# =============================================================================
# Residual
# =============================================================================


class TestFreeStream:
    def test_uniform_flow_has_zero_residual(self, farfield_operator: DGOperator) -> None:
        state = _uniform(farfield_operator.mesh, W_FAR)
        geometry = farfield_operator.geometry()
        velocities = np.zeros_like(farfield_operator.mesh.control_points)
        residual, gradients = farfield_operator.time_derivative(
            state.w, geometry, velocities, 0.0
        )
        np.testing.assert_allclose(gradients, 0.0, atol=1e-12)
        np.testing.assert_allclose(residual, 0.0, atol=1e-12)

    def test_uniform_mesh_translation_has_zero_residual(
        self, farfield_operator: DGOperator
    ) -> None:
        state = _uniform(farfield_operator.mesh, W_FAR)
        velocities = np.broadcast_to(
            np.array([0.05, -0.02]), farfield_operator.mesh.control_points.shape
        )
        residual, _ = farfield_operator.time_derivative(
            state.w, farfield_operator.geometry(), velocities, 0.0
        )
        np.testing.assert_allclose(residual, 0.0, atol=1e-12)

    def test_rk4_step_keeps_uniform_flow(self, farfield_operator: DGOperator) -> None:
        mesh = farfield_operator.mesh
        state = _uniform(mesh, W_FAR)
        static = np.zeros_like(mesh.control_points)
        dt = stable_dt(farfield_operator, state, farfield_operator.geometry(), static, 0.5)
        stepped = advance(
            farfield_operator, state, lambda t: MeshMotion.static(mesh.control_points, t), dt
        )
        assert stepped.time == pytest.approx(dt)
        np.testing.assert_allclose(stepped.w, state.w, atol=1e-12)

    def test_missing_condition_is_rejected(self) -> None:
        with pytest.raises(FlowError, match="farfield"):
            DGOperator(_mesh(tagged(0, "farfield")), AIR, {"wall": WallCondition()})


class TestGradients:
    def test_constant_state_has_zero_gradient(self, gradient_operator: DGOperator) -> None:
        mesh = gradient_operator.mesh
        static = np.zeros_like(mesh.control_points)
        g = gradient_operator.solve_gradients(
            _uniform(mesh, W_FAR).w, gradient_operator.geometry(), static, 0.0
        )
        np.testing.assert_allclose(g, 0.0, atol=1e-11)

    def test_linear_density_has_exact_gradient(self, gradient_operator: DGOperator) -> None:
        mesh = gradient_operator.mesh
        geometry = gradient_operator.geometry()
        w = gradient_operator.project(
            lambda x: conservative(1.0 + 0.2 * x[..., 0], 0.0, 0.0, 1.0, AIR), geometry
        )
        static = np.zeros_like(mesh.control_points)
        g = gradient_operator.solve_gradients(w, geometry, static, 0.0)

        # boundary closure uses the far-field state, so only inner patches are exact
        touching = {face.ref.patch for face in mesh.boundary_faces}
        inner = np.array([k for k in range(mesh.patch_count) if k not in touching])
        assert inner.size >= 4
        expected = np.zeros((inner.size, mesh.basis_size, 4, 2))
        expected[:, :, 0, 0] = 0.2
        np.testing.assert_allclose(g[inner], expected, atol=1e-10)


class TestHangingFaces:
    def test_sub_edges_share_quadrature_points(self, split_operator: DGOperator) -> None:
        mesh = split_operator.mesh
        faces = split_operator.tables.faces
        hanging_ids = [f for f, face in enumerate(mesh.faces) if face.is_hanging]
        hanging = np.isin(faces.face_index, hanging_ids)
        assert len(hanging_ids) == 1
        assert hanging.sum() == 2 * (mesh.degree + 2)

        x = mesh.control_points
        minus = np.einsum("fa,fad->fd", faces.minus_basis, x[faces.minus_patch])
        plus = np.einsum("fa,fad->fd", faces.plus_basis, x[faces.plus_patch])
        np.testing.assert_allclose(minus[hanging], plus[hanging], atol=1e-14)
        measure = split_operator.geometry().face_measure[hanging].sum()
        assert measure == pytest.approx(1.0, rel=1e-13)

    def test_coarse_side_balances_fine_side(self, split_operator: DGOperator) -> None:
        mesh = split_operator.mesh
        fine = np.array([patch.lineage.level > 0 for patch in mesh.patches])
        w = np.empty((mesh.patch_count, mesh.basis_size, 4))
        w[~fine] = conservative(1.0, 0.2, 0.05, 1.0, AIR)
        w[fine] = conservative(0.9, 0.1, 0.0, 0.8, AIR)
        static = np.zeros_like(mesh.control_points)

        residual = split_operator.residual(
            w, np.zeros((*w.shape, 2)), split_operator.geometry(), static, 0.0
        )

        # walls carry no mass or energy, so each side only sees the hanging face
        totals = residual.sum(axis=1)[:, [0, 3]]
        coarse_side, fine_side = totals[~fine].sum(axis=0), totals[fine].sum(axis=0)
        assert abs(coarse_side[0]) > 1e-3
        np.testing.assert_allclose(coarse_side, -fine_side, rtol=1e-11, atol=1e-12)


class TestPatchMap:
    def test_chunked_map_matches_serial_evaluation(self) -> None:
        mesh = _mesh(tagged(0, "farfield"), refined=True)
        calls: list[int] = []

        def recording_map(
            task: Callable[[NDArray[np.intp]], NDArray[np.float64]],
            chunks: Sequence[NDArray[np.intp]],
        ) -> list[NDArray[np.float64]]:
            calls.append(len(chunks))
            return [task(chunk) for chunk in reversed(chunks)][::-1]

        serial = DGOperator(mesh, AIR, {"farfield": FAR})
        chunked = DGOperator(mesh, AIR, {"farfield": FAR}, patch_map=recording_map, chunk_size=2)
        w = _uniform(mesh, W_FAR).w.copy()
        w[0, :, 0] += 0.01 * np.arange(mesh.basis_size)
        static = np.zeros_like(mesh.control_points)
        expected, _ = serial.time_derivative(w, serial.geometry(), static, 0.0)
        actual, _ = chunked.time_derivative(w, chunked.geometry(), static, 0.0)
        np.testing.assert_allclose(actual, expected, rtol=1e-13, atol=1e-15)
        assert calls == [4]


class TestClosedBox:
    def test_mass_is_conserved(self, box_operator: DGOperator) -> None:
        mesh = box_operator.mesh
        w = _uniform(mesh, W_REST).w.copy()
        w[:, :, 0] += 0.05 * np.linspace(0.0, 1.0, mesh.basis_size)
        state = FlowState(w=w, g=np.zeros((*w.shape, 2)))
        geometry = box_operator.geometry()
        before = total_mass(box_operator, state.w, geometry)
        stepped = advance(
            box_operator, state, lambda t: MeshMotion.static(mesh.control_points, t), 1e-3
        )
        assert total_mass(box_operator, stepped.w, geometry) == pytest.approx(before, rel=1e-13)

    def test_stable_dt_scales_with_cfl(self, box_operator: DGOperator) -> None:
        state = _uniform(box_operator.mesh, W_REST)
        static = np.zeros_like(box_operator.mesh.control_points)
        geometry = box_operator.geometry()
        dt = stable_dt(box_operator, state, geometry, static, 0.5)
        assert dt > 0.0
        assert stable_dt(box_operator, state, geometry, static, 1.0) == pytest.approx(2.0 * dt)


# =============================================================================
# Loads
# =============================================================================


class TestLoads:
    def test_uniform_pressure_on_closed_contour_cancels(self, box_operator: DGOperator) -> None:
        state = _uniform(box_operator.mesh, W_REST)
        static = np.zeros_like(box_operator.mesh.control_points)
        force = integrated_force(
            box_operator, state, box_operator.geometry(), static, ["wall", "left"]
        )
        np.testing.assert_allclose(force, 0.0, atol=1e-13)

    def test_pressure_pushes_on_left_wall(self, box_operator: DGOperator) -> None:
        state = _uniform(box_operator.mesh, W_REST)
        static = np.zeros_like(box_operator.mesh.control_points)
        force = integrated_force(box_operator, state, box_operator.geometry(), static, ["left"])
        np.testing.assert_allclose(force, [-2.0, 0.0], atol=1e-13)

    def test_unknown_tag_contributes_nothing(self, box_operator: DGOperator) -> None:
        state = _uniform(box_operator.mesh, W_REST)
        static = np.zeros_like(box_operator.mesh.control_points)
        force = integrated_force(box_operator, state, box_operator.geometry(), static, ["none"])
        np.testing.assert_array_equal(force, [0.0, 0.0])

    def test_pressure_coefficient(self, box_operator: DGOperator) -> None:
        state = _uniform(box_operator.mesh, W_REST)
        static = np.zeros_like(box_operator.mesh.control_points)
        points, normals, cp = pressure_coefficient(
            box_operator, state, box_operator.geometry(), static, "left", (0.0, 1.0, 2.0)
        )
        np.testing.assert_allclose(points[:, 0], 0.0, atol=1e-14)
        np.testing.assert_allclose(normals, np.tile([-1.0, 0.0], (len(cp), 1)), atol=1e-14)
        np.testing.assert_allclose(cp, 1.0)

    @pytest.mark.parametrize(("alpha", "expected"), [(0.0, (3.0, 4.0)), (90.0, (4.0, -3.0))])
    def test_force_coefficients(self, alpha: float, expected: tuple[float, float]) -> None:
        c_d, c_l = force_coefficients(np.array([3.0, 4.0]), 1.0, 1.0, 2.0, alpha)
        assert (c_d, c_l) == pytest.approx(expected)
