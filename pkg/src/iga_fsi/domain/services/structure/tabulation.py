"""Element-wise quadrature tables of spline bases on structural geometries.

Tables store, per element (nonempty knot span or span pair), the indices of the
basis functions supported there and their values at the element's Gauss
points, so assembly never forms dense global basis matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import PatchTanglingError
from iga_fsi.domain.services.nurbs import basis_table
from iga_fsi.domain.services.numerics import gauss_legendre

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from iga_fsi.domain.entities import NurbsCurve, NurbsSurface
    from iga_fsi.domain.value_objects import KnotVector


def _freeze(*arrays: NDArray[np.generic]) -> None:
    for array in arrays:
        array.setflags(write=False)


@dataclass(frozen=True, slots=True, eq=False)
class CurveTable:
    """conn (E, p+1); points, weights (E, q) in parameter measure; basis, d_basis (E, q, p+1)."""

    conn: NDArray[np.intp]
    points: NDArray[np.float64]
    weights: NDArray[np.float64]
    basis: NDArray[np.float64]
    d_basis: NDArray[np.float64]

    def __post_init__(self) -> None:
        _freeze(self.conn, self.points, self.weights, self.basis, self.d_basis)

    @property
    def element_count(self) -> int:
        return int(self.conn.shape[0])


@dataclass(frozen=True, slots=True, eq=False)
class SurfaceTable:
    """Reference-configuration table of a solid.

    conn (E, nloc); weights (E, q) already multiplied by det J of the reference
    map; basis (E, q, nloc); grad (E, q, nloc, 2) physical (material) gradients.
    """

    conn: NDArray[np.intp]
    points: NDArray[np.float64]
    weights: NDArray[np.float64]
    basis: NDArray[np.float64]
    grad: NDArray[np.float64]

    def __post_init__(self) -> None:
        _freeze(self.conn, self.points, self.weights, self.basis, self.grad)

    @property
    def element_count(self) -> int:
        return int(self.conn.shape[0])


def _span_rule(
    kv: KnotVector, n_points: int
) -> tuple[list[int], NDArray[np.float64], NDArray[np.float64]]:
    rule = gauss_legendre(n_points)
    spans = kv.spans()
    points = []
    weights = []
    for span in spans:
        x, w = rule.mapped(*kv.span_bounds(span))
        points.append(x)
        weights.append(w)
    return spans, np.array(points), np.array(weights)


@lru_cache(maxsize=32)
def curve_table(curve: NurbsCurve, n_points: int) -> CurveTable:
    kv = curve.knot_vector
    p = kv.degree
    spans, points, weights = _span_rule(kv, n_points)
    _, values = basis_table(kv, points.ravel(), 1, curve.weights)
    shape = (len(spans), n_points, p + 1)
    conn = np.array([np.arange(s - p, s + 1) for s in spans], dtype=np.intp)
    return CurveTable(
        conn=conn,
        points=points,
        weights=weights,
        basis=values[:, 0].reshape(shape),
        d_basis=values[:, 1].reshape(shape),
    )


@lru_cache(maxsize=8)
def surface_table(surface: NurbsSurface, n_points: int) -> SurfaceTable:
    """Tensor Gauss rule per element, gradients pulled back through the reference Jacobian.

    Raises:
        PatchTanglingError: the reference geometry has a non-positive Jacobian.
    """
    kx, ky = surface.knot_vectors
    p, q = kx.degree, ky.degree
    n2 = surface.shape[1]
    w_net = surface.weights

    spans_x, pts_x, wts_x = _span_rule(kx, n_points)
    spans_y, pts_y, wts_y = _span_rule(ky, n_points)
    _, bx = basis_table(kx, pts_x.ravel(), 1)
    _, by = basis_table(ky, pts_y.ravel(), 1)
    bx = bx.reshape(len(spans_x), n_points, 2, p + 1)
    by = by.reshape(len(spans_y), n_points, 2, q + 1)

    conn, points, weights, basis, grads = [], [], [], [], []
    for ex, sx in enumerate(spans_x):
        for ey, sy in enumerate(spans_y):
            ii = np.arange(sx - p, sx + 1)
            jj = np.arange(sy - q, sy + 1)
            w_loc = w_net[np.ix_(ii, jj)]
            # polynomial tensor values at the (q1, q2) points, local (i, j)
            n = np.einsum("ai,bj->abij", bx[ex, :, 0], by[ey, :, 0])
            n_xi = np.einsum("ai,bj->abij", bx[ex, :, 1], by[ey, :, 0])
            n_eta = np.einsum("ai,bj->abij", bx[ex, :, 0], by[ey, :, 1])
            weighted = n * w_loc
            total = weighted.sum(axis=(2, 3))[..., None, None]
            r = weighted / total
            d_total_xi = (n_xi * w_loc).sum(axis=(2, 3))[..., None, None]
            d_total_eta = (n_eta * w_loc).sum(axis=(2, 3))[..., None, None]
            r_xi = (n_xi * w_loc - r * d_total_xi) / total
            r_eta = (n_eta * w_loc - r * d_total_eta) / total

            nq = n_points * n_points
            nloc = (p + 1) * (q + 1)
            r = r.reshape(nq, nloc)
            d_ref = np.stack([r_xi.reshape(nq, nloc), r_eta.reshape(nq, nloc)], axis=-1)
            local_idx = (ii[:, None] * n2 + jj[None, :]).ravel()
            x_loc = surface.control_net.reshape(-1, 2)[local_idx]
            jac = np.einsum("ai,qad->qid", x_loc, d_ref)
            det = jac[:, 0, 0] * jac[:, 1, 1] - jac[:, 0, 1] * jac[:, 1, 0]
            if np.any(det <= 0.0):
                raise PatchTanglingError(
                    f"Reference solid geometry is inverted in element ({ex}, {ey})"
                )
            inv_t = np.linalg.inv(jac).transpose(0, 2, 1)
            grad = np.einsum("qde,qae->qad", inv_t, d_ref)

            conn.append(local_idx)
            points.append(
                np.column_stack([np.repeat(pts_x[ex], n_points), np.tile(pts_y[ey], n_points)])
            )
            weights.append(np.outer(wts_x[ex], wts_y[ey]).ravel() * det)
            basis.append(r)
            grads.append(grad)

    return SurfaceTable(
        conn=np.array(conn, dtype=np.intp),
        points=np.array(points),
        weights=np.array(weights),
        basis=np.array(basis),
        grad=np.array(grads),
    )
