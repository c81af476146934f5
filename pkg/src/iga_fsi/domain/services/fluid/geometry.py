"""Quadrature tables of the DG tessellation and the geometry of one mesh configuration.

Weights of the Bézier patches never change during a run, so rational basis
values and reference derivatives are tabulated once. Only the control point
positions move; `flow_geometry` turns them into Jacobians, mass matrices,
normals and face measures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities import edge_parameters
from iga_fsi.domain.services.nurbs import (
    patch_jacobians,
    rational_tables,
    require_positive,
    tensor_bernstein,
)
from iga_fsi.domain.services.numerics import batched_inverse, gauss_legendre, tensor_rule

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from iga_fsi.domain.entities import MultiPatchMesh


@dataclass(frozen=True, slots=True, eq=False)
class VolumeTable:
    """weights (m,); basis (K, m, nb); d_basis (K, m, nb, 2) w.r.t. (xi, eta)."""

    weights: NDArray[np.float64]
    basis: NDArray[np.float64]
    d_basis: NDArray[np.float64]


@dataclass(frozen=True, slots=True, eq=False)
class FaceTable:
    """Interior face quadrature points, flattened over all faces and sub-edges.

    The minus side is the patch with the lower id; normals point out of it.
    `scale` is the quadrature weight times d(minus edge coordinate)/du, u the
    sub-edge coordinate; the measure is scale * |tangent|.
    """

    minus_patch: NDArray[np.intp]
    plus_patch: NDArray[np.intp]
    minus_basis: NDArray[np.float64]
    plus_basis: NDArray[np.float64]
    tangent_basis: NDArray[np.float64]
    scale: NDArray[np.float64]
    orientation: NDArray[np.float64]
    face_index: NDArray[np.intp]

    @property
    def size(self) -> int:
        return int(self.minus_patch.size)


@dataclass(frozen=True, slots=True, eq=False)
class BoundaryTable:
    """Boundary quadrature points; `tags[tag_index[i]]` is the condition tag of point i."""

    patch: NDArray[np.intp]
    basis: NDArray[np.float64]
    tangent_basis: NDArray[np.float64]
    scale: NDArray[np.float64]
    orientation: NDArray[np.float64]
    face_index: NDArray[np.intp]
    edge_parameter: NDArray[np.float64]
    tag_index: NDArray[np.intp]
    tags: tuple[str, ...]

    @property
    def size(self) -> int:
        return int(self.patch.size)

    def points_of(self, tag: str) -> NDArray[np.intp]:
        if tag not in self.tags:
            return np.zeros(0, dtype=np.intp)
        return np.nonzero(self.tag_index == self.tags.index(tag))[0]


@dataclass(frozen=True, slots=True, eq=False)
class DGTables:
    degree: int
    volume: VolumeTable
    faces: FaceTable
    boundary: BoundaryTable


@dataclass(frozen=True, slots=True, eq=False)
class FlowGeometry:
    """One mesh configuration.

    det (K, m); grads (K, m, nb, 2) physical basis gradients; mass and
    mass_inverse (K, nb, nb); size (K,) smallest patch width; face and boundary
    normals are unit vectors, measures include quadrature weights.
    """

    positions: NDArray[np.float64]
    det: NDArray[np.float64]
    grads: NDArray[np.float64]
    mass: NDArray[np.float64]
    mass_inverse: NDArray[np.float64]
    size: NDArray[np.float64]
    face_normals: NDArray[np.float64]
    face_measure: NDArray[np.float64]
    face_size: NDArray[np.float64]
    boundary_normals: NDArray[np.float64]
    boundary_measure: NDArray[np.float64]
    boundary_points: NDArray[np.float64]


def edge_basis(
    degree: int, weights: NDArray[np.float64], edge: int, s: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Rational basis (m, nb) on a local edge and its derivative along the edge coordinate."""
    params = edge_parameters(edge, s)
    values, grads = tensor_bernstein(degree, params[:, 0], params[:, 1])
    rational, d_rational = rational_tables(weights.reshape(1, -1), values, grads)
    direction = 0 if edge in (0, 2) else 1
    return rational[0], d_rational[0, :, :, direction]


def _orientation(edge: int) -> float:
    # outward normal is (t_y, -t_x) on edges 0 and 1, (-t_y, t_x) on edges 2 and 3
    return 1.0 if edge in (0, 1) else -1.0


def build_tables(mesh: MultiPatchMesh, n_points: int | None = None) -> DGTables:
    """Tabulate volume, interior face and boundary quadrature (default p+2 points per direction)."""
    p = mesh.degree
    n = p + 2 if n_points is None else n_points
    points, weights = tensor_rule(n)
    values, grads = tensor_bernstein(p, points[:, 0], points[:, 1])
    basis, d_basis = rational_tables(mesh.weights, values, grads)
    volume = VolumeTable(weights=np.asarray(weights), basis=basis, d_basis=d_basis)

    rule = gauss_legendre(n)
    u, w = rule.points, rule.weights

    minus_p, plus_p, minus_b, plus_b, tangent_b, scale, orient, index = ([] for _ in range(8))
    for f, face in enumerate(mesh.faces):
        coarse = face.coarse
        for sub in face.fine:
            s_coarse = sub.coarse_parameter(u)
            length = sub.interval[1] - sub.interval[0]
            fine_side = (sub.ref, u, 1.0)
            coarse_side = (coarse, s_coarse, length)
            minus, plus = (
                (fine_side, coarse_side)
                if sub.ref.patch < coarse.patch
                else (coarse_side, fine_side)
            )
            (m_ref, m_s, m_scale), (p_ref, p_s, _) = minus, plus
            m_basis, m_tangent = edge_basis(p, mesh.weights[m_ref.patch], m_ref.edge, m_s)
            p_basis, _ = edge_basis(p, mesh.weights[p_ref.patch], p_ref.edge, p_s)
            minus_p.append(np.full(n, m_ref.patch))
            plus_p.append(np.full(n, p_ref.patch))
            minus_b.append(m_basis)
            plus_b.append(p_basis)
            tangent_b.append(m_tangent)
            scale.append(w * m_scale)
            orient.append(np.full(n, _orientation(m_ref.edge)))
            index.append(np.full(n, f))
    nb = mesh.basis_size
    faces = FaceTable(
        minus_patch=_ints(minus_p),
        plus_patch=_ints(plus_p),
        minus_basis=_rows(minus_b, nb),
        plus_basis=_rows(plus_b, nb),
        tangent_basis=_rows(tangent_b, nb),
        scale=_floats(scale),
        orientation=_floats(orient),
        face_index=_ints(index),
    )

    tags = tuple(sorted(mesh.tags()))
    b_patch, b_basis, b_tangent, b_scale, b_orient, b_index, b_param, b_tag = (
        [] for _ in range(8)
    )
    for f, bface in enumerate(mesh.boundary_faces):
        ref = bface.ref
        r_basis, r_tangent = edge_basis(p, mesh.weights[ref.patch], ref.edge, u)
        b_patch.append(np.full(n, ref.patch))
        b_basis.append(r_basis)
        b_tangent.append(r_tangent)
        b_scale.append(w)
        b_orient.append(np.full(n, _orientation(ref.edge)))
        b_index.append(np.full(n, f))
        b_param.append(u)
        b_tag.append(np.full(n, tags.index(bface.tag)))
    boundary = BoundaryTable(
        patch=_ints(b_patch),
        basis=_rows(b_basis, nb),
        tangent_basis=_rows(b_tangent, nb),
        scale=_floats(b_scale),
        orientation=_floats(b_orient),
        face_index=_ints(b_index),
        edge_parameter=_floats(b_param),
        tag_index=_ints(b_tag),
        tags=tags,
    )
    return DGTables(degree=p, volume=volume, faces=faces, boundary=boundary)


def _ints(parts: list[NDArray[np.generic]]) -> NDArray[np.intp]:
    return np.concatenate(parts).astype(np.intp) if parts else np.zeros(0, dtype=np.intp)


def _floats(parts: list[NDArray[np.generic]]) -> NDArray[np.float64]:
    return np.concatenate(parts).astype(np.float64) if parts else np.zeros(0)


def _rows(parts: list[NDArray[np.float64]], width: int) -> NDArray[np.float64]:
    return np.concatenate(parts) if parts else np.zeros((0, width))


def _normals(
    tangents: NDArray[np.float64], orientation: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    length = np.linalg.norm(tangents, axis=-1)
    rotated = np.column_stack([tangents[:, 1], -tangents[:, 0]]) * orientation[:, None]
    return rotated / length[:, None], length


def flow_geometry(tables: DGTables, positions: NDArray[np.float64]) -> FlowGeometry:
    """Geometry of the configuration with patch control points `positions` (K, nb, 2).

    Raises:
        PatchTanglingError: some patch has a non-positive Jacobian at a quadrature point.
        SingularMatrixError: a patch mass matrix could not be inverted.
    """
    volume = tables.volume
    jac, det = patch_jacobians(positions, volume.d_basis)
    require_positive(det)
    inv = np.linalg.inv(jac)
    grads = np.einsum("kmad,kmdi->kmai", volume.d_basis, inv, optimize=True)
    weighted = volume.weights * det
    mass = np.einsum("km,kma,kmb->kab", weighted, volume.basis, volume.basis, optimize=True)
    columns = np.linalg.norm(jac, axis=-2)
    size = np.min(det / columns.max(axis=-1), axis=1)

    faces = tables.faces
    f_tangent = np.einsum("fa,fad->fd", faces.tangent_basis, positions[faces.minus_patch])
    f_normal, f_length = _normals(f_tangent, faces.orientation)
    face_size = np.minimum(size[faces.minus_patch], size[faces.plus_patch])

    bnd = tables.boundary
    b_tangent = np.einsum("fa,fad->fd", bnd.tangent_basis, positions[bnd.patch])
    b_normal, b_length = _normals(b_tangent, bnd.orientation)
    b_points = np.einsum("fa,fad->fd", bnd.basis, positions[bnd.patch])

    return FlowGeometry(
        positions=positions,
        det=det,
        grads=grads,
        mass=mass,
        mass_inverse=batched_inverse(mass),
        size=size,
        face_normals=f_normal,
        face_measure=faces.scale * f_length,
        face_size=face_size,
        boundary_normals=b_normal,
        boundary_measure=bnd.scale * b_length,
        boundary_points=b_points,
    )
