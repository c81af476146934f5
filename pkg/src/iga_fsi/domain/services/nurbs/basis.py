"""B-spline and NURBS basis functions.

Cox-de Boor recursion in the triangular-table form: for a span i the p+1
functions N_{i-p..i} are built level by level, with the 0/0 = 0 convention
applied wherever two knots coincide.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from scipy.special import comb

from iga_fsi.domain.exceptions import GeometryError, InvalidControlNetError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.value_objects import KnotVector


def _check_span(kv: KnotVector, span: int, xi: float) -> float:
    x = kv.clamp(xi)
    if not kv.degree <= span <= kv.size - 1:
        raise GeometryError(f"Span index {span} outside [{kv.degree}, {kv.size - 1}]")
    lo, hi = kv.span_bounds(span)
    if x < lo - kv.tolerance or x > hi + kv.tolerance:
        raise GeometryError(f"Parameter {x} is not inside span {span} = [{lo}, {hi}]")
    return x


def eval_bspline_basis(kv: KnotVector, span: int, xi: float) -> NDArray[np.float64]:
    """Values of the p+1 basis functions N_{span-p..span} at xi."""
    x = _check_span(kv, span, xi)
    p, knots = kv.degree, kv.knots
    values = np.zeros(p + 1)
    values[0] = 1.0
    left = np.zeros(p + 1)
    right = np.zeros(p + 1)
    for j in range(1, p + 1):
        left[j] = x - knots[span + 1 - j]
        right[j] = knots[span + j] - x
        saved = 0.0
        for r in range(j):
            denom = right[r + 1] + left[j - r]
            temp = values[r] / denom if denom != 0.0 else 0.0
            values[r] = saved + right[r + 1] * temp
            saved = left[j - r] * temp
        values[j] = saved
    return values


def eval_bspline_ders(kv: KnotVector, span: int, xi: float, order: int) -> NDArray[np.float64]:
    """Derivatives 0..order of the p+1 nonzero basis functions, shape (order+1, p+1).

    Rows above the degree are identically zero.
    """
    if order < 0:
        raise GeometryError(f"Derivative order must be non-negative, got {order}")
    x = _check_span(kv, span, xi)
    p, knots = kv.degree, kv.knots
    top = min(order, p)

    ndu = np.zeros((p + 1, p + 1))
    ndu[0, 0] = 1.0
    left = np.zeros(p + 1)
    right = np.zeros(p + 1)
    for j in range(1, p + 1):
        left[j] = x - knots[span + 1 - j]
        right[j] = knots[span + j] - x
        saved = 0.0
        for r in range(j):
            ndu[j, r] = right[r + 1] + left[j - r]
            temp = ndu[r, j - 1] / ndu[j, r] if ndu[j, r] != 0.0 else 0.0
            ndu[r, j] = saved + right[r + 1] * temp
            saved = left[j - r] * temp
        ndu[j, j] = saved

    ders = np.zeros((order + 1, p + 1))
    ders[0] = ndu[:, p]
    a = np.zeros((2, p + 1))
    for r in range(p + 1):
        s1, s2 = 0, 1
        a[0, 0] = 1.0
        for k in range(1, top + 1):
            d = 0.0
            rk, pk = r - k, p - k
            if r >= k:
                a[s2, 0] = _ratio(a[s1, 0], ndu[pk + 1, rk])
                d = a[s2, 0] * ndu[rk, pk]
            j1 = 1 if rk >= -1 else -rk
            j2 = k - 1 if r - 1 <= pk else p - r
            for j in range(j1, j2 + 1):
                a[s2, j] = _ratio(a[s1, j] - a[s1, j - 1], ndu[pk + 1, rk + j])
                d += a[s2, j] * ndu[rk + j, pk]
            if r <= pk:
                a[s2, k] = _ratio(-a[s1, k - 1], ndu[pk + 1, r])
                d += a[s2, k] * ndu[r, pk]
            ders[k, r] = d
            s1, s2 = s2, s1

    factor = float(p)
    for k in range(1, top + 1):
        ders[k] *= factor
        factor *= p - k
    return ders


def _ratio(num: float, den: float) -> float:
    return num / den if den != 0.0 else 0.0


def eval_bspline_deriv(kv: KnotVector, span: int, xi: float, order: int) -> NDArray[np.float64]:
    """d^k N / dxi^k for the p+1 functions of the span; zeros when order > p."""
    return eval_bspline_ders(kv, span, xi, order)[order]


def rational_ders(
    ders: NDArray[np.float64], weights: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Rational basis derivatives from polynomial ones (Leibniz quotient rule).

    `ders` has shape (order+1, p+1) and `weights` the p+1 local weights.
    """
    weighted = ders * weights
    w_ders = weighted.sum(axis=1)
    out = np.zeros_like(ders)
    for k in range(ders.shape[0]):
        value = weighted[k].copy()
        for i in range(1, k + 1):
            value -= comb(k, i, exact=True) * w_ders[i] * out[k - i]
        out[k] = value / w_ders[0]
    return out


def eval_nurbs_basis(
    kv: KnotVector, weights: ArrayLike, xi: float, order: int = 0
) -> tuple[int, NDArray[np.float64]]:
    """Rational basis R_{span-p..span} and derivatives up to `order` at xi.

    Returns the span index and an array of shape (order+1, p+1); row 0 sums to 1.
    """
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (kv.size,) or np.any(w <= 0.0):
        raise InvalidControlNetError(f"Need {kv.size} positive weights, got shape {w.shape}")
    span = kv.find_span(xi)
    ders = eval_bspline_ders(kv, span, xi, order)
    return span, rational_ders(ders, w[span - kv.degree : span + 1])


def basis_table(
    kv: KnotVector, points: ArrayLike, order: int = 0, weights: ArrayLike | None = None
) -> tuple[NDArray[np.intp], NDArray[np.float64]]:
    """Tabulate (rational when weights are given) basis derivatives at many parameters.

    Returns spans (m,) and values (m, order+1, p+1).
    """
    xs = np.atleast_1d(np.asarray(points, dtype=np.float64))
    w = None if weights is None else np.asarray(weights, dtype=np.float64)
    spans = np.empty(xs.size, dtype=np.intp)
    values = np.empty((xs.size, order + 1, kv.degree + 1))
    for q, x in enumerate(xs):
        span = kv.find_span(float(x))
        ders = eval_bspline_ders(kv, span, float(x), order)
        if w is not None:
            ders = rational_ders(ders, w[span - kv.degree : span + 1])
        spans[q] = span
        values[q] = ders
    return spans, values


def global_basis(
    kv: KnotVector, points: ArrayLike, order: int = 0, weights: ArrayLike | None = None
) -> NDArray[np.float64]:
    """Dense (order+1, m, n) matrix of all basis functions at the given parameters."""
    spans, values = basis_table(kv, points, order, weights)
    p = kv.degree
    out = np.zeros((order + 1, spans.size, kv.size))
    for q, span in enumerate(spans):
        out[:, q, span - p : span + 1] = values[q]
    return out
