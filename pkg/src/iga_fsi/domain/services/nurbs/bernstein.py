"""Bernstein polynomials and rational Bernstein bases on [0, 1] and [0, 1]^2.

Tensor-product basis functions are flattened with a = i * (p+1) + j, i the xi
index and j the eta index, matching a C-order reshape of a (p+1, p+1) grid.
"""

from __future__ import annotations

from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np
from scipy.special import comb

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray


@lru_cache(maxsize=32)
def _binomials(p: int) -> NDArray[np.float64]:
    return np.asarray(comb(p, np.arange(p + 1)), dtype=np.float64)


def _values(p: int, t: NDArray[np.float64]) -> NDArray[np.float64]:
    if p < 0:
        return np.zeros((t.size, 0))
    i = np.arange(p + 1)
    return _binomials(p) * t[:, None] ** i * (1.0 - t[:, None]) ** (p - i)


def bernstein(p: int, t: ArrayLike, order: int = 0) -> NDArray[np.float64]:
    """Bernstein polynomials B_i^p and their derivatives, shape (order+1, m, p+1).

    Uses d/dt B_i^p = p (B_{i-1}^{p-1} - B_i^{p-1}) applied `k` times.
    """
    ts = np.atleast_1d(np.asarray(t, dtype=np.float64))
    out = np.zeros((order + 1, ts.size, p + 1))
    for k in range(min(order, p) + 1):
        lower = _values(p - k, ts)
        # k-th difference of the degree p-k basis, shifted into the p+1 slots
        diff = np.zeros((ts.size, p + 1))
        for j in range(k + 1):
            sign = (-1.0) ** (k - j)
            diff[:, j : j + p - k + 1] += sign * comb(k, j) * lower
        scale = np.prod(np.arange(p - k + 1, p + 1, dtype=np.float64))
        out[k] = scale * diff
    return out


def tensor_bernstein(
    p: int, xi: ArrayLike, eta: ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Tensor-product Bernstein values (m, nb) and gradients (m, nb, 2) at paired points."""
    bx = bernstein(p, xi, 1)
    by = bernstein(p, eta, 1)
    m = bx.shape[1]
    values = np.einsum("mi,mj->mij", bx[0], by[0]).reshape(m, -1)
    d_xi = np.einsum("mi,mj->mij", bx[1], by[0]).reshape(m, -1)
    d_eta = np.einsum("mi,mj->mij", bx[0], by[1]).reshape(m, -1)
    return values, np.stack([d_xi, d_eta], axis=-1)


def rational_tables(
    weights: NDArray[np.float64], values: NDArray[np.float64], grads: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Rational basis R (K, m, nb) and gradient dR (K, m, nb, 2) for K weight sets (K, nb).

    R_a = w_a B_a / W with W = sum_a w_a B_a; dR = (w dB - R dW) / W.
    """
    w = np.atleast_2d(weights)
    weighted = values[None] * w[:, None, :]
    total = weighted.sum(axis=2)
    d_weighted = grads[None] * w[:, None, :, None]
    d_total = d_weighted.sum(axis=2)
    rational = weighted / total[..., None]
    d_rational = d_weighted - rational[..., None] * d_total[:, :, None, :]
    d_rational /= total[..., None, None]
    return rational, d_rational


def rational_curve_basis(
    weights: NDArray[np.float64], t: ArrayLike, order: int = 1
) -> NDArray[np.float64]:
    """Rational Bernstein curve basis and derivatives up to order 1, shape (order+1, m, p+1)."""
    p = weights.size - 1
    b = bernstein(p, t, order)
    weighted = b * weights
    total = weighted.sum(axis=2)
    out = np.empty_like(b)
    out[0] = weighted[0] / total[0][:, None]
    if order >= 1:
        out[1] = (weighted[1] - out[0] * total[1][:, None]) / total[0][:, None]
    return out
