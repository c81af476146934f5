"""Local discontinuous Galerkin traces for the gradient and viscous fluxes.

The gradient equation takes the state from the minus side of every face
(the side whose outward normal is used); the viscous flux takes the
complementary plus side and adds a jump penalty eta = (p+1)^2 / h.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.services.fluid.fluxes import normal_component, viscous_flux

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from iga_fsi.domain.value_objects import GasModel


def penalty_coefficient(degree: int, h: NDArray[np.float64]) -> NDArray[np.float64]:
    return (degree + 1) ** 2 / np.asarray(h, dtype=np.float64)


def penalty_scales(
    w_left: NDArray[np.float64], w_right: NDArray[np.float64], gas: GasModel
) -> NDArray[np.float64]:
    """Diffusivities per conservative row: 0, nu, nu, gamma nu / Pr with nu = mu / rho_avg."""
    rho = 0.5 * (w_left[..., 0] + w_right[..., 0])
    scales = np.zeros((*rho.shape, 4))
    scales[..., 1] = gas.mu / rho
    scales[..., 2] = gas.mu / rho
    scales[..., 3] = gas.conductivity / rho
    return scales


def ldg_fluxes(
    w_left: NDArray[np.float64],
    w_right: NDArray[np.float64],
    g_right: NDArray[np.float64],
    normal: NDArray[np.float64],
    eta: NDArray[np.float64],
    gas: GasModel,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """(w*, f_v* . n) at face points.

    w* = w_left; f_v* . n = f_v(w_right, g_right) . n - eta D (w_left - w_right),
    with D the per-row diffusivity of `penalty_scales`.
    """
    trace = np.array(w_left, dtype=np.float64)
    if not gas.is_viscous:
        return trace, np.zeros_like(trace)
    flux = normal_component(viscous_flux(w_right, g_right, gas), normal)
    jump = w_left - w_right
    flux -= eta[..., None] * penalty_scales(w_left, w_right, gas) * jump
    return trace, flux
