from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities import edge_parameters
from iga_fsi.domain.exceptions import PatchTanglingError
from iga_fsi.domain.services.nurbs.bernstein import rational_tables, tensor_bernstein

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.entities import BezierPatch


def patch_jacobians(
    control_points: NDArray[np.float64], d_rational: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Geometry Jacobians for K patches at m points.

    control_points: (K, nb, 2); d_rational: (K, m, nb, 2).
    Returns J (K, m, 2, 2) with J[..., i, d] = dx_i / dxi_d, and det J (K, m).
    """
    jac = np.einsum("kai,kmad->kmid", control_points, d_rational, optimize=True)
    det = jac[..., 0, 0] * jac[..., 1, 1] - jac[..., 0, 1] * jac[..., 1, 0]
    return jac, det


def require_positive(det: NDArray[np.float64], patch_ids: Sequence[int] | None = None) -> None:
    """Raise PatchTanglingError listing every patch with a non-positive determinant."""
    det = np.atleast_2d(det)
    bad = np.nonzero(np.any(det <= 0.0, axis=1))[0]
    if bad.size:
        ids = [int(patch_ids[i]) for i in bad] if patch_ids is not None else bad.tolist()
        raise PatchTanglingError(
            f"Non-positive Jacobian determinant on {len(ids)} patch(es), "
            f"min {float(det.min()):.3e}",
            ids,
        )


def geometry_jacobian(
    patch: BezierPatch, xi: float, eta: float
) -> tuple[NDArray[np.float64], float]:
    """dx/d(xi, eta) at one point and its determinant (must be positive)."""
    values, grads = tensor_bernstein(patch.degree, [xi], [eta])
    _, d_rational = rational_tables(patch.weights.reshape(1, -1), values, grads)
    jac, det = patch_jacobians(patch.control_points.reshape(1, -1, 2), d_rational)
    require_positive(det)
    return jac[0, 0], float(det[0, 0])


def edge_tangents(patch: BezierPatch, edge: int, s: ArrayLike) -> NDArray[np.float64]:
    """dx/ds along a local edge (edge coordinate increasing with xi or eta), shape (m, 2)."""
    params = edge_parameters(edge, np.atleast_1d(np.asarray(s, dtype=np.float64)))
    values, grads = tensor_bernstein(patch.degree, params[:, 0], params[:, 1])
    _, d_rational = rational_tables(patch.weights.reshape(1, -1), values, grads)
    jac, _ = patch_jacobians(patch.control_points.reshape(1, -1, 2), d_rational)
    direction = 0 if edge in (0, 2) else 1
    return jac[0, :, :, direction]


def boundary_jacobian(patch: BezierPatch, edge: int, s: ArrayLike) -> NDArray[np.float64]:
    """|dx/ds| along a local edge."""
    return np.linalg.norm(edge_tangents(patch, edge, s), axis=1)
