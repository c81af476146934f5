"""Physical fluxes of the compressible Navier-Stokes equations in ALE form.

Fluxes are returned as (..., 4, 2) arrays: row per conservative variable,
column per space direction.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.services.fluid.gas import pressure

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.value_objects import GasModel


def convective_flux(w: ArrayLike, gas: GasModel) -> NDArray[np.float64]:
    w = np.asarray(w, dtype=np.float64)
    rho = w[..., 0]
    u = w[..., 1:3] / rho[..., None]
    p = pressure(w, gas)
    flux = np.empty((*w.shape[:-1], 4, 2))
    flux[..., 0, :] = w[..., 1:3]
    flux[..., 1:3, :] = w[..., 1:3, None] * u[..., None, :]
    flux[..., 1, 0] += p
    flux[..., 2, 1] += p
    flux[..., 3, :] = u * (w[..., 3] + p)[..., None]
    return flux


def ale_flux(w: ArrayLike, mesh_velocity: ArrayLike, gas: GasModel) -> NDArray[np.float64]:
    """f_c(w) - w (x) v_mesh."""
    w = np.asarray(w, dtype=np.float64)
    v = np.asarray(mesh_velocity, dtype=np.float64)
    return convective_flux(w, gas) - w[..., :, None] * v[..., None, :]


def velocity_gradients(
    w: ArrayLike, g: ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Velocity gradient (..., 2, 2) [i, d] = du_i/dx_d and internal energy gradient (..., 2).

    Recovered from the conservative gradients by the chain rule.
    """
    w = np.asarray(w, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    rho = w[..., 0]
    u = w[..., 1:3] / rho[..., None]
    grad_rho = g[..., 0, :]
    grad_u = (g[..., 1:3, :] - u[..., :, None] * grad_rho[..., None, :]) / rho[..., None, None]
    total = w[..., 3] / rho
    grad_total = (g[..., 3, :] - total[..., None] * grad_rho) / rho[..., None]
    grad_internal = grad_total - np.einsum("...k,...kd->...d", u, grad_u)
    return grad_u, grad_internal


def viscous_stress(grad_u: ArrayLike, gas: GasModel) -> NDArray[np.float64]:
    """tau = mu (grad u + grad u^T) - 2/3 mu div u I."""
    grad_u = np.asarray(grad_u, dtype=np.float64)
    divergence = np.trace(grad_u, axis1=-2, axis2=-1)
    tau = gas.mu * (grad_u + np.swapaxes(grad_u, -1, -2))
    tau -= (2.0 / 3.0) * gas.mu * divergence[..., None, None] * np.eye(2)
    return tau


def viscous_flux(
    w: ArrayLike, g: ArrayLike, gas: GasModel, heat_flux: bool = True
) -> NDArray[np.float64]:
    """f_v with rows (0, tau_1., tau_2., u_k tau_k. - q).

    q = -gamma mu / Pr grad(internal energy). `heat_flux=False` drops q
    (adiabatic walls).
    """
    w = np.asarray(w, dtype=np.float64)
    flux = np.zeros((*w.shape[:-1], 4, 2))
    if not gas.is_viscous:
        return flux
    grad_u, grad_internal = velocity_gradients(w, g)
    tau = viscous_stress(grad_u, gas)
    u = w[..., 1:3] / w[..., 0, None]
    flux[..., 1:3, :] = tau
    flux[..., 3, :] = np.einsum("...k,...kd->...d", u, tau)
    if heat_flux:
        flux[..., 3, :] += gas.conductivity * grad_internal
    return flux


def normal_component(flux: ArrayLike, normal: ArrayLike) -> NDArray[np.float64]:
    """flux . n, shape (..., 4)."""
    return np.einsum("...cd,...d->...c", np.asarray(flux), np.asarray(normal))
