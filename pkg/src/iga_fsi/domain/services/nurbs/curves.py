"""Point and derivative evaluation of NURBS curves, surfaces and Bézier patches."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.services.nurbs.basis import basis_table, eval_bspline_ders
from iga_fsi.domain.services.nurbs.bernstein import bernstein, rational_tables, tensor_bernstein

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.entities import BezierPatch, BezierSegment, NurbsCurve, NurbsSurface


def _homogeneous_ders(
    curve: NurbsCurve, xi: float, order: int
) -> NDArray[np.float64]:
    kv = curve.knot_vector
    span = kv.find_span(xi)
    ders = eval_bspline_ders(kv, span, xi, order)
    local = curve.homogeneous()[span - kv.degree : span + 1]
    return ders @ local


def _project_ders(hw: NDArray[np.float64]) -> NDArray[np.float64]:
    """Derivatives of A / W from homogeneous derivatives (order+1, 3), up to order 2."""
    a, w = hw[:, :2], hw[:, 2]
    out = np.zeros_like(a)
    out[0] = a[0] / w[0]
    if hw.shape[0] > 1:
        out[1] = (a[1] - w[1] * out[0]) / w[0]
    if hw.shape[0] > 2:
        out[2] = (a[2] - 2.0 * w[1] * out[1] - w[2] * out[0]) / w[0]
    return out


def eval_curve(curve: NurbsCurve, xi: float) -> NDArray[np.float64]:
    """Physical point x(xi)."""
    return _project_ders(_homogeneous_ders(curve, xi, 0))[0]


def eval_curve_derivative(curve: NurbsCurve, xi: float, order: int = 1) -> NDArray[np.float64]:
    """Point and derivatives up to `order` (at most 2), shape (order+1, 2)."""
    if not 0 <= order <= 2:
        raise ValueError(f"Curve derivatives are available up to order 2, got {order}")
    return _project_ders(_homogeneous_ders(curve, xi, order))


def sample_curve(curve: NurbsCurve, points: ArrayLike, order: int = 0) -> NDArray[np.float64]:
    """Vectorised evaluation at many parameters, shape (order+1, m, 2) or (m, 2) for order 0."""
    kv = curve.knot_vector
    spans, values = basis_table(kv, points, order)
    hw = curve.homogeneous()
    p = kv.degree
    rows = np.stack([hw[s - p : s + 1] for s in spans])
    hom = np.einsum("mkb,mbc->mkc", values, rows)
    projected = np.stack([_project_ders(h) for h in hom], axis=1)
    return projected[0] if order == 0 else projected


def eval_surface(surface: NurbsSurface, xi: float, eta: float) -> NDArray[np.float64]:
    return eval_surface_derivatives(surface, xi, eta)[0]


def eval_surface_derivatives(
    surface: NurbsSurface, xi: float, eta: float
) -> NDArray[np.float64]:
    """Rows x, dx/dxi, dx/deta at (xi, eta), shape (3, 2)."""
    kx, ky = surface.knot_vectors
    sx, sy = kx.find_span(xi), ky.find_span(eta)
    nx = eval_bspline_ders(kx, sx, xi, 1)
    ny = eval_bspline_ders(ky, sy, eta, 1)
    local = surface.homogeneous()[sx - kx.degree : sx + 1, sy - ky.degree : sy + 1]
    s = np.einsum("i,j,ijc->c", nx[0], ny[0], local)
    s_xi = np.einsum("i,j,ijc->c", nx[1], ny[0], local)
    s_eta = np.einsum("i,j,ijc->c", nx[0], ny[1], local)
    point = s[:2] / s[2]
    return np.stack(
        [
            point,
            (s_xi[:2] - s_xi[2] * point) / s[2],
            (s_eta[:2] - s_eta[2] * point) / s[2],
        ]
    )


def sample_surface(surface: NurbsSurface, xi: ArrayLike, eta: ArrayLike) -> NDArray[np.float64]:
    """Points at paired parameters, shape (m, 2)."""
    xs = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    ys = np.atleast_1d(np.asarray(eta, dtype=np.float64))
    return np.stack(
        [eval_surface(surface, float(a), float(b)) for a, b in zip(xs, ys, strict=True)]
    )


def patch_points(
    degree: int,
    control_points: NDArray[np.float64],
    weights: NDArray[np.float64],
    xi: ArrayLike,
    eta: ArrayLike,
) -> NDArray[np.float64]:
    """Points of a rational Bézier patch given flat (nb, 2) control points and (nb,) weights."""
    values, grads = tensor_bernstein(degree, xi, eta)
    r, _ = rational_tables(np.reshape(weights, (1, -1)), values, grads)
    return r[0] @ np.reshape(control_points, (-1, 2))


def eval_patch(
    patch: BezierPatch, xi: ArrayLike, eta: ArrayLike
) -> NDArray[np.float64]:
    """Points of a rational Bézier patch at paired parameters, shape (m, 2)."""
    return patch_points(patch.degree, patch.control_points, patch.weights, xi, eta)


def eval_segment(segment: BezierSegment, t: ArrayLike) -> NDArray[np.float64]:
    b = bernstein(segment.degree, t)[0]
    hom = b @ segment.homogeneous()
    return hom[:, :2] / hom[:, 2:3]
