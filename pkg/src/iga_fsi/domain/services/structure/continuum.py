"""Saint Venant-Kirchhoff kinematics and stresses.

All functions broadcast over leading axes: F has shape (..., 2, 2).
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

_IDENTITY = np.eye(2)


def green_lagrange(deformation_gradient: ArrayLike) -> NDArray[np.float64]:
    """E = (F^T F - I) / 2."""
    f = np.asarray(deformation_gradient, dtype=np.float64)
    return 0.5 * (np.einsum("...ki,...kj->...ij", f, f) - _IDENTITY)


def pk2_stress(strain: ArrayLike, lame_lambda: float, lame_mu: float) -> NDArray[np.float64]:
    """S = lambda tr(E) I + 2 mu E."""
    e = np.asarray(strain, dtype=np.float64)
    trace = np.trace(e, axis1=-2, axis2=-1)[..., None, None]
    return lame_lambda * trace * _IDENTITY + 2.0 * lame_mu * e


def first_piola(
    deformation_gradient: ArrayLike, lame_lambda: float, lame_mu: float
) -> NDArray[np.float64]:
    """P = F S."""
    f = np.asarray(deformation_gradient, dtype=np.float64)
    s = pk2_stress(green_lagrange(f), lame_lambda, lame_mu)
    return np.einsum("...ik,...kj->...ij", f, s)


def energy_density(
    deformation_gradient: ArrayLike, lame_lambda: float, lame_mu: float
) -> NDArray[np.float64]:
    """W = lambda/2 tr(E)^2 + mu E:E."""
    e = green_lagrange(deformation_gradient)
    trace = np.trace(e, axis1=-2, axis2=-1)
    return 0.5 * lame_lambda * trace**2 + lame_mu * np.einsum("...ij,...ij->...", e, e)


def material_tangent(
    deformation_gradient: ArrayLike, lame_lambda: float, lame_mu: float
) -> NDArray[np.float64]:
    """dP_iJ / dF_kL as an (..., 2, 2, 2, 2) array indexed [i, J, k, L]."""
    f = np.asarray(deformation_gradient, dtype=np.float64)
    s = pk2_stress(green_lagrange(f), lame_lambda, lame_mu)
    b = np.einsum("...iK,...kK->...ik", f, f)
    delta = _IDENTITY
    return (
        np.einsum("ik,...JL->...iJkL", delta, s)
        + lame_lambda * np.einsum("...iJ,...kL->...iJkL", f, f)
        + lame_mu * np.einsum("...iL,...kJ->...iJkL", f, f)
        + lame_mu * np.einsum("...ik,JL->...iJkL", b, delta)
    )
