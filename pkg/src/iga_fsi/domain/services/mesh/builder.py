from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix

from iga_fsi.domain.entities import MultiPatchMesh
from iga_fsi.domain.exceptions import MeshError
from iga_fsi.domain.services.mesh.connectivity import MAX_HANGING_DEPTH, discover_connectivity
from iga_fsi.domain.services.mesh.levels import (
    check_balance,
    check_split_balance,
    refine_patches,
)
from iga_fsi.domain.services.nurbs import (
    bezier_extract_surface,
    extraction_operators,
    patch_jacobians,
    rational_tables,
    require_positive,
    split_matrices,
    tensor_bernstein,
)
from iga_fsi.domain.services.numerics import tensor_rule
from iga_fsi.domain.value_objects import RefinementPlan

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from numpy.typing import NDArray

    from iga_fsi.domain.entities import BezierPatch, NurbsSurface
    from iga_fsi.domain.value_objects import Side

logger = logging.getLogger(__name__)

CONNECTIVITY_TOLERANCE = 1e-10


def build_fluid_mesh(
    surfaces: Sequence[NurbsSurface],
    tags: Mapping[tuple[int, Side], str],
    plan: RefinementPlan | None = None,
) -> MultiPatchMesh:
    """Tessellate a conforming multipatch NURBS layout into rational Bézier patches.

    Args:
        surfaces: Underlying surfaces; their index is the lineage source id.
        tags: Boundary tag per (surface index, side). Tagged sides are domain boundary.
        plan: Static refinement applied by mid-parameter splitting.

    Raises:
        MeshError: inconsistent degrees or unknown surfaces in the tag map.
        NonConformingMeshError, UntaggedBoundaryError: connectivity failures.
        RefinementBalanceError: the plan breaks the allowed level jump.
        PatchTanglingError: a patch has a non-positive Jacobian.
    """
    plan = plan or RefinementPlan()
    degrees = {d for s in surfaces for d in s.degrees}
    if len(degrees) != 1:
        raise MeshError(f"Surfaces must share one degree in both directions, got {sorted(degrees)}")
    unknown = [key for key in tags if not 0 <= key[0] < len(surfaces)]
    if unknown:
        raise MeshError(f"Boundary tags reference unknown surfaces: {unknown}")
    degree = degrees.pop()

    # Step 1: Bézier extraction of every surface
    patches: list[BezierPatch] = []
    for surface_id, surface in enumerate(surfaces):
        patches.extend(bezier_extract_surface(surface, surface_id))

    # Step 2: prescribed refinement
    patches = refine_patches(patches, plan)
    check_split_balance(patches, plan.max_level_jump)

    # Step 3: connectivity
    diagonal = _diagonal(surfaces)
    faces, boundary = discover_connectivity(
        patches,
        surfaces,
        tags,
        CONNECTIVITY_TOLERANCE * diagonal,
        max_depth=max(MAX_HANGING_DEPTH, plan.max_level_jump),
    )

    # Step 4: regeneration operator for mesh motion
    mesh = MultiPatchMesh(
        degree=degree,
        patches=tuple(patches),
        faces=faces,
        boundary_faces=boundary,
        surfaces=tuple(surfaces),
        regeneration=regeneration_operator(patches, surfaces),
    )

    # Step 5: validation
    check_balance(mesh, plan.max_level_jump)
    check_admissible(mesh.degree, mesh.control_points, mesh.weights)

    logger.info(
        "Built fluid mesh: %d surfaces, %d patches, %d faces, %d boundary faces",
        len(surfaces),
        mesh.patch_count,
        len(faces),
        len(boundary),
    )
    return mesh


def _diagonal(surfaces: Sequence[NurbsSurface]) -> float:
    points = np.concatenate([s.control_net.reshape(-1, 2) for s in surfaces])
    span = points.max(axis=0) - points.min(axis=0)
    return float(np.hypot(span[0], span[1]))


def regeneration_operator(
    patches: Sequence[BezierPatch], surfaces: Sequence[NurbsSurface]
) -> csr_matrix:
    """Sparse map from stacked surface control points to stacked patch control points.

    Row k * nb + a holds the coefficients of patch k's control point a. With the
    weights fixed, extraction and splitting act on positions through
    x_patch = (A (w x)) / (A w), which is linear in x.
    """
    extraction = [
        tuple({span: op for span, _, op in extraction_operators(kv)} for kv in s.knot_vectors)
        for s in surfaces
    ]
    sizes = [s.shape[0] * s.shape[1] for s in surfaces]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    rows: list[NDArray[np.intp]] = []
    cols: list[NDArray[np.intp]] = []
    vals: list[NDArray[np.float64]] = []
    nb = 0
    for k, patch in enumerate(patches):
        lineage = patch.lineage
        sid = lineage.source_id
        ops = [extraction[sid][0][lineage.spans[0]], extraction[sid][1][lineage.spans[1]]]
        for step in lineage.splits:
            lower, upper = split_matrices(patch.degree, step.t)
            ops[step.direction] = (upper if step.upper else lower) @ ops[step.direction]
        homogeneous = np.kron(ops[0], ops[1])
        weights = surfaces[sid].weights.ravel()
        block = homogeneous * weights[None, :] / (homogeneous @ weights)[:, None]
        nb = block.shape[0]
        r, c = np.nonzero(block)
        rows.append(k * nb + r)
        cols.append(offsets[sid] + c)
        vals.append(block[r, c])
    shape = (len(patches) * nb, int(offsets[-1]))
    matrix = coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape)
    return matrix.tocsr()


def check_admissible(
    degree: int,
    control_points: NDArray[np.float64],
    weights: NDArray[np.float64],
    patch_ids: Sequence[int] | None = None,
) -> NDArray[np.float64]:
    """Jacobian determinants at the (p+2)^2 volume points; raises on any non-positive value."""
    points, _ = tensor_rule(degree + 2)
    values, grads = tensor_bernstein(degree, points[:, 0], points[:, 1])
    _, d_rational = rational_tables(weights, values, grads)
    _, det = patch_jacobians(control_points, d_rational)
    require_positive(det, patch_ids)
    return det
