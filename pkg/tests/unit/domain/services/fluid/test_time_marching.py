"""Accuracy tests for explicit time marching of the flow solver.

Tests cover:
- A uniform flow staying uniform while the mesh interior oscillates
- Convergence of an advected isentropic vortex under patch splitting
"""

import math

import numpy as np
import pytest
from numpy.typing import NDArray

from iga_fsi.domain.entities import FlowState, MeshMotion, MultiPatchMesh
from iga_fsi.domain.services.fluid import (
    DGOperator,
    advance,
    conservative,
    stable_dt,
)
from iga_fsi.domain.services.mesh import build_fluid_mesh
from iga_fsi.domain.value_objects import FarFieldCondition, GasModel
from tests.unit.domain.services.shapes import rectangle, tagged

AIR = GasModel()
DEGREE = 2
W_FAR = conservative(1.0, 0.3, 0.1, 1.0 / 1.4, AIR)

BUMP_AMPLITUDE = 0.03
BUMP_PERIOD = 0.5
BUMP_STEP = 0.005

VORTEX_STRENGTH = 5.0
VORTEX_DRIFT = (0.5, 0.0)
VORTEX_HALF_WIDTH = 8.0
VORTEX_END_TIME = 0.5

# =============================================================================
# Fixtures
# =============================================================================


def _square(box: tuple[float, float, float, float], elements: int) -> MultiPatchMesh:
    surface = rectangle(box, elements=(elements, elements), degree=DEGREE)
    return build_fluid_mesh([surface], tagged(0, "farfield"))


def vortex(x: NDArray[np.float64], t: float) -> NDArray[np.float64]:
    """Isentropic vortex of unit core radius drifting with the free stream."""
    gamma = AIR.gamma
    dx = x[..., 0] - VORTEX_DRIFT[0] * t
    dy = x[..., 1] - VORTEX_DRIFT[1] * t
    bump = np.exp(0.5 * (1.0 - dx * dx - dy * dy))
    swirl = VORTEX_STRENGTH / (2.0 * math.pi) * bump
    cooling = (gamma - 1.0) * VORTEX_STRENGTH**2 / (8.0 * gamma * math.pi**2)
    rho = (1.0 - cooling * bump**2) ** (1.0 / (gamma - 1.0))
    u1 = VORTEX_DRIFT[0] - swirl * dy
    u2 = VORTEX_DRIFT[1] + swirl * dx
    return conservative(rho, u1, u2, rho**gamma, AIR)


def vortex_density_error(elements: int) -> float:
    half = VORTEX_HALF_WIDTH
    mesh = _square((-half, -half, half, half), elements)
    operator = DGOperator(mesh, AIR, {"farfield": FarFieldCondition(1.0, VORTEX_DRIFT, 1.0)})
    geometry = operator.geometry()
    w0 = operator.project(lambda x: vortex(x, 0.0), geometry)
    state = FlowState(w=w0, g=np.zeros((*w0.shape, 2)))

    def static(t: float) -> MeshMotion:
        return MeshMotion.static(mesh.control_points, t)

    velocities = np.zeros_like(mesh.control_points)
    steps = math.ceil(VORTEX_END_TIME / stable_dt(operator, state, geometry, velocities, 0.5))
    for _ in range(steps):
        state = advance(operator, state, static, VORTEX_END_TIME / steps)

    points = np.einsum("kma,kad->kmd", operator.tables.volume.basis, geometry.positions)
    density = operator.volume_values(state.w)[..., 0]
    exact = vortex(points, VORTEX_END_TIME)[..., 0]
    weighted = operator.tables.volume.weights * geometry.det
    return float(np.sqrt(np.sum(weighted * (density - exact) ** 2)))


# =============================================================================
# Moving mesh
# =============================================================================


class TestOscillatingMesh:
    def test_uniform_flow_stays_uniform(self) -> None:
        mesh = _square((0.0, 0.0, 1.0, 1.0), 3)
        far = FarFieldCondition(1.0, (0.3, 0.1), 1.0 / 1.4)
        operator = DGOperator(mesh, AIR, {"farfield": far})
        rest = mesh.control_points
        x, y = rest[..., 0], rest[..., 1]
        shape = (np.sin(math.pi * x) * np.sin(math.pi * y))[..., None] * np.array([1.0, 0.5])
        omega = 2.0 * math.pi / BUMP_PERIOD

        def oscillating(t: float) -> MeshMotion:
            return MeshMotion(
                positions=rest + BUMP_AMPLITUDE * math.sin(omega * t) * shape,
                velocities=BUMP_AMPLITUDE * omega * math.cos(omega * t) * shape,
                time=t,
            )

        state = FlowState.uniform(mesh.patch_count, mesh.basis_size, W_FAR)
        for _ in range(100):
            state = advance(operator, state, oscillating, BUMP_STEP)

        assert state.time == pytest.approx(100 * BUMP_STEP)
        deviation = np.max(np.abs(state.w - W_FAR)) / np.max(np.abs(W_FAR))
        assert deviation <= 1e-6


# =============================================================================
# Isentropic vortex
# =============================================================================


class TestVortexConvergence:
    def test_density_error_converges_at_high_order(self) -> None:
        coarse, medium, fine = (vortex_density_error(n) for n in (12, 24, 48))
        assert medium < coarse
        order = math.log2(medium / fine)
        assert order >= DEGREE + 0.5
