"""Discontinuous Galerkin operator on a multipatch rational Bézier tessellation.

Each patch carries (p+1)^2 DOFs per conservative variable. The semi-discrete
system is d(M W)/dt = R(W, G, V) with the gradient DOFs G obtained from the
auxiliary LDG equation M G = -volume + face terms at every evaluation. Mass
matrices are block diagonal, one block per patch.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import FlowError, PositivityError
from iga_fsi.domain.services.fluid.boundary import boundary_states
from iga_fsi.domain.services.fluid.fluxes import ale_flux, normal_component, viscous_flux
from iga_fsi.domain.services.fluid.gas import check_positivity, pressure
from iga_fsi.domain.services.fluid.geometry import build_tables, flow_geometry
from iga_fsi.domain.services.fluid.ldg import ldg_fluxes, penalty_coefficient, penalty_scales
from iga_fsi.domain.services.fluid.riemann import hll_ale_flux
from iga_fsi.domain.services.nurbs import rational_tables, tensor_bernstein
from iga_fsi.domain.value_objects import WallCondition

if TYPE_CHECKING:
    from collections.abc import Callable, Mapping, Sequence

    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.entities import MultiPatchMesh
    from iga_fsi.domain.services.fluid.geometry import DGTables, FlowGeometry
    from iga_fsi.domain.value_objects import BoundaryCondition, GasModel

type Array = NDArray[np.float64]
type ChunkTask = Callable[[NDArray[np.intp]], Array]
type PatchMap = Callable[[ChunkTask, Sequence[NDArray[np.intp]]], list[Array]]

logger = logging.getLogger(__name__)

DEFAULT_CHUNK_SIZE = 256


def _serial_map(task: ChunkTask, chunks: Sequence[NDArray[np.intp]]) -> list[Array]:
    return [task(chunk) for chunk in chunks]


@dataclass(frozen=True, slots=True, eq=False)
class BoundaryTraces:
    """Interior traces and closure states at every boundary quadrature point."""

    w_inside: Array
    g_inside: Array
    ghost: Array
    boundary: Array
    mesh_velocity: Array
    wall: NDArray[np.bool_]


class DGOperator:
    """Spatial discretisation of the ALE compressible Navier-Stokes equations.

    Contract:
      - every boundary tag of the mesh has exactly one condition
      - face fluxes are computed once per quadrature point and scattered to both
        sides in a fixed order, so results do not depend on the patch map
    """

    def __init__(
        self,
        mesh: MultiPatchMesh,
        gas: GasModel,
        conditions: Mapping[str, BoundaryCondition],
        patch_map: PatchMap | None = None,
        chunk_size: int = DEFAULT_CHUNK_SIZE,
        tables: DGTables | None = None,
    ) -> None:
        missing = sorted(mesh.tags() - set(conditions))
        if missing:
            raise FlowError(f"No boundary condition for tag(s): {', '.join(missing)}")
        self.mesh = mesh
        self.gas = gas
        self.conditions = dict(conditions)
        self.tables = tables if tables is not None else build_tables(mesh)
        self._map = patch_map or _serial_map
        count = mesh.patch_count
        self._chunks = [
            np.arange(start, min(start + chunk_size, count))
            for start in range(0, count, chunk_size)
        ]
        logger.debug(
            "DG operator: %d patches, %d face points, %d boundary points",
            count,
            self.tables.faces.size,
            self.tables.boundary.size,
        )

    @property
    def degree(self) -> int:
        return self.mesh.degree

    def geometry(self, positions: ArrayLike | None = None) -> FlowGeometry:
        x = self.mesh.control_points if positions is None else np.asarray(positions, np.float64)
        return flow_geometry(self.tables, x)

    # ------------------------------------------------------------------
    # Evaluation helpers
    # ------------------------------------------------------------------

    def volume_values(self, coefficients: Array) -> Array:
        """Field at the volume quadrature points, (K, m, ...)."""
        return np.einsum("kma,ka...->km...", self.tables.volume.basis, coefficients)

    def project(self, field: Callable[[Array], Array], geometry: FlowGeometry) -> Array:
        """L2 projection of field(x) with x of shape (K, m, 2) returning (K, m, c)."""
        basis = self.tables.volume.basis
        x = np.einsum("kma,kad->kmd", basis, geometry.positions)
        values = np.asarray(field(x), dtype=np.float64)
        weighted = self.tables.volume.weights * geometry.det
        rhs = np.einsum("km,kma,kmc->kac", weighted, basis, values)
        return np.einsum("kab,kbc->kac", geometry.mass_inverse, rhs)

    def sample(
        self, coefficients: Array, positions: Array, resolution: int
    ) -> tuple[Array, Array]:
        """Points (K, r^2, 2) and field values (K, r^2, ...) on a uniform r x r grid per patch."""
        t = np.linspace(0.0, 1.0, resolution)
        xi, eta = np.meshgrid(t, t, indexing="ij")
        values, grads = tensor_bernstein(self.degree, xi.ravel(), eta.ravel())
        basis, _ = rational_tables(self.mesh.weights, values, grads)
        points = np.einsum("kma,kad->kmd", basis, positions)
        return points, np.einsum("kma,ka...->km...", basis, coefficients)

    def boundary_traces(
        self, w: Array, g: Array, geometry: FlowGeometry, velocities: Array, time: float
    ) -> BoundaryTraces:
        bnd = self.tables.boundary
        w_in = np.einsum("fa,fac->fc", bnd.basis, w[bnd.patch])
        g_in = np.einsum("fa,facd->fcd", bnd.basis, g[bnd.patch])
        v_mesh = np.einsum("fa,fad->fd", bnd.basis, velocities[bnd.patch])
        ghost = np.empty_like(w_in)
        state = np.empty_like(w_in)
        wall = np.zeros(bnd.size, dtype=bool)
        for tag in bnd.tags:
            idx = bnd.points_of(tag)
            condition = self.conditions[tag]
            ghost[idx], state[idx] = boundary_states(
                condition,
                w_in[idx],
                geometry.boundary_normals[idx],
                v_mesh[idx],
                geometry.boundary_points[idx],
                time,
                self.gas,
            )
            wall[idx] = isinstance(condition, WallCondition)
        return BoundaryTraces(w_in, g_in, ghost, state, v_mesh, wall)

    # ------------------------------------------------------------------
    # Gradient (auxiliary) equation
    # ------------------------------------------------------------------

    def solve_gradients(
        self, w: Array, geometry: FlowGeometry, velocities: Array, time: float
    ) -> Array:
        """G from M G = -int grad(R) w + oint R w* n, solved patch by patch."""
        tables = self.tables
        weighted = tables.volume.weights * geometry.det
        w_q = self.volume_values(w)
        rhs = -np.einsum("km,kmad,kmc->kacd", weighted, geometry.grads, w_q, optimize=True)

        faces = tables.faces
        if faces.size:
            w_minus = np.einsum("fa,fac->fc", faces.minus_basis, w[faces.minus_patch])
            trace = w_minus[:, :, None] * (geometry.face_normals * geometry.face_measure[:, None])[
                :, None, :
            ]
            np.add.at(
                rhs, faces.minus_patch, faces.minus_basis[:, :, None, None] * trace[:, None]
            )
            np.add.at(rhs, faces.plus_patch, -faces.plus_basis[:, :, None, None] * trace[:, None])

        bnd = tables.boundary
        if bnd.size:
            g_zero = np.zeros((*w.shape, 2))
            traces = self.boundary_traces(w, g_zero, geometry, velocities, time)
            trace = traces.boundary[:, :, None] * (
                geometry.boundary_normals * geometry.boundary_measure[:, None]
            )[:, None, :]
            np.add.at(rhs, bnd.patch, bnd.basis[:, :, None, None] * trace[:, None])

        return np.einsum("kab,kbcd->kacd", geometry.mass_inverse, rhs)

    # ------------------------------------------------------------------
    # Residual
    # ------------------------------------------------------------------

    def _volume_chunk(
        self, w: Array, g: Array, geometry: FlowGeometry, velocities: Array
    ) -> ChunkTask:
        basis = self.tables.volume.basis
        quad = self.tables.volume.weights

        def task(idx: NDArray[np.intp]) -> Array:
            b = basis[idx]
            w_q = np.einsum("kma,kac->kmc", b, w[idx])
            try:
                check_positivity(w_q, self.gas)
            except PositivityError as e:
                raise PositivityError(str(e), [int(idx[i]) for i in e.patch_ids]) from e
            g_q = np.einsum("kma,kacd->kmcd", b, g[idx])
            v_q = np.einsum("kma,kad->kmd", b, velocities[idx])
            flux = ale_flux(w_q, v_q, self.gas) - viscous_flux(w_q, g_q, self.gas)
            weighted = quad * geometry.det[idx]
            return np.einsum(
                "km,kmad,kmcd->kac", weighted, geometry.grads[idx], flux, optimize=True
            )

        return task

    def residual(
        self, w: Array, g: Array, geometry: FlowGeometry, velocities: Array, time: float
    ) -> Array:
        """Right-hand side R (K, nb, 4) of d(M W)/dt = R.

        Raises:
            PositivityError: rho or p is not positive at a quadrature point.
        """
        parts = self._map(self._volume_chunk(w, g, geometry, velocities), self._chunks)
        res = np.concatenate(parts, axis=0) if parts else np.zeros_like(w)

        faces = self.tables.faces
        if faces.size:
            flux = self._interior_flux(w, g, geometry, velocities)
            np.add.at(res, faces.minus_patch, -faces.minus_basis[:, :, None] * flux[:, None, :])
            np.add.at(res, faces.plus_patch, faces.plus_basis[:, :, None] * flux[:, None, :])

        bnd = self.tables.boundary
        if bnd.size:
            flux = self._boundary_flux(w, g, geometry, velocities, time)
            np.add.at(res, bnd.patch, -bnd.basis[:, :, None] * flux[:, None, :])
        return res

    def _interior_flux(
        self, w: Array, g: Array, geometry: FlowGeometry, velocities: Array
    ) -> Array:
        """(F_ale* - F_v*) times the face measure at interior points."""
        faces = self.tables.faces
        w_minus = np.einsum("fa,fac->fc", faces.minus_basis, w[faces.minus_patch])
        w_plus = np.einsum("fa,fac->fc", faces.plus_basis, w[faces.plus_patch])
        g_plus = np.einsum("fa,facd->fcd", faces.plus_basis, g[faces.plus_patch])
        v_face = np.einsum("fa,fad->fd", faces.minus_basis, velocities[faces.minus_patch])
        normal = geometry.face_normals
        self._check_traces(w_minus, faces.minus_patch)
        self._check_traces(w_plus, faces.plus_patch)

        v_n = np.einsum("fd,fd->f", v_face, normal)
        convective = hll_ale_flux(w_minus, w_plus, normal, v_n, self.gas)
        eta = penalty_coefficient(self.degree, geometry.face_size)
        _, viscous = ldg_fluxes(w_minus, w_plus, g_plus, normal, eta, self.gas)
        return (convective - viscous) * geometry.face_measure[:, None]

    def _boundary_flux(
        self, w: Array, g: Array, geometry: FlowGeometry, velocities: Array, time: float
    ) -> Array:
        bnd = self.tables.boundary
        traces = self.boundary_traces(w, g, geometry, velocities, time)
        self._check_traces(traces.w_inside, bnd.patch)
        normal = geometry.boundary_normals
        v_n = np.einsum("fd,fd->f", traces.mesh_velocity, normal)
        convective = hll_ale_flux(traces.w_inside, traces.ghost, normal, v_n, self.gas)
        viscous = self.boundary_viscous_flux(traces, geometry)
        return (convective - viscous) * geometry.boundary_measure[:, None]

    def boundary_viscous_flux(self, traces: BoundaryTraces, geometry: FlowGeometry) -> Array:
        """f_v* . n on the boundary: wall state with penalty on walls, interior trace elsewhere."""
        normal = geometry.boundary_normals
        out = np.zeros_like(traces.w_inside)
        if not self.gas.is_viscous:
            return out
        wall = traces.wall
        free = ~wall
        if np.any(free):
            out[free] = normal_component(
                viscous_flux(traces.w_inside[free], traces.g_inside[free], self.gas), normal[free]
            )
        if np.any(wall):
            size = geometry.size[self.tables.boundary.patch[wall]]
            eta = penalty_coefficient(self.degree, size)
            w_in, w_b = traces.w_inside[wall], traces.boundary[wall]
            scales = penalty_scales(w_in, w_b, self.gas)
            scales[:, 3] = 0.0
            flux = normal_component(
                viscous_flux(w_b, traces.g_inside[wall], self.gas, heat_flux=False), normal[wall]
            )
            out[wall] = flux - eta[:, None] * scales * (w_in - w_b)
        return out

    def _check_traces(self, traces: Array, patches: NDArray[np.intp]) -> None:
        rho = traces[:, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            p = pressure(traces, self.gas)
        bad = ~(rho > 0.0) | ~(p > 0.0)
        if np.any(bad):
            ids = np.unique(patches[bad]).tolist()
            raise PositivityError(f"Non-physical face trace on {len(ids)} patch(es)", ids)

    def time_derivative(
        self, w: Array, geometry: FlowGeometry, velocities: Array, time: float
    ) -> tuple[Array, Array]:
        """(R, G) for conservative DOFs w: gradients first, then the residual."""
        if self.gas.is_viscous:
            g = self.solve_gradients(w, geometry, velocities, time)
        else:
            g = np.zeros((*w.shape, 2))
        return self.residual(w, g, geometry, velocities, time), g
