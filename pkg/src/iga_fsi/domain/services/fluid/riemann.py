"""HLL approximate Riemann solver for the ALE convective flux."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import VacuumStateError
from iga_fsi.domain.services.fluid.fluxes import convective_flux, normal_component
from iga_fsi.domain.services.fluid.gas import pressure

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.value_objects import GasModel


def wave_speeds(
    w_left: NDArray[np.float64],
    w_right: NDArray[np.float64],
    normal: NDArray[np.float64],
    normal_velocity: NDArray[np.float64],
    gas: GasModel,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Davis estimates relative to the moving face.

    S_L = min(un_L - c_L, un_R - c_R) - v_n, S_R = max(un_L + c_L, un_R + c_R) - v_n.
    """
    un_l = np.einsum("...d,...d->...", w_left[..., 1:3], normal) / w_left[..., 0]
    un_r = np.einsum("...d,...d->...", w_right[..., 1:3], normal) / w_right[..., 0]
    with np.errstate(invalid="ignore"):
        c_l = np.sqrt(gas.gamma * pressure(w_left, gas) / w_left[..., 0])
        c_r = np.sqrt(gas.gamma * pressure(w_right, gas) / w_right[..., 0])
    s_left = np.minimum(un_l - c_l, un_r - c_r) - normal_velocity
    s_right = np.maximum(un_l + c_l, un_r + c_r) - normal_velocity
    return s_left, s_right


def hll_ale_flux(
    w_left: ArrayLike,
    w_right: ArrayLike,
    normal: ArrayLike,
    normal_velocity: ArrayLike,
    gas: GasModel,
) -> NDArray[np.float64]:
    """Numerical normal flux (f_c - v w)* . n through a face moving with normal speed v_n.

    Raises:
        VacuumStateError: a trace has non-positive density or pressure, or the
            wave fan degenerates.
    """
    wl = np.asarray(w_left, dtype=np.float64)
    wr = np.asarray(w_right, dtype=np.float64)
    n = np.asarray(normal, dtype=np.float64)
    vn = np.asarray(normal_velocity, dtype=np.float64)

    s_left, s_right = wave_speeds(wl, wr, n, vn, gas)
    if not (np.all(np.isfinite(s_left)) and np.all(np.isfinite(s_right))):
        raise VacuumStateError("Riemann problem with vacuum or non-physical traces")

    f_left = normal_component(convective_flux(wl, gas), n) - vn[..., None] * wl
    f_right = normal_component(convective_flux(wr, gas), n) - vn[..., None] * wr

    sl = s_left[..., None]
    sr = s_right[..., None]
    width = np.where(sr > sl, sr - sl, 1.0)
    central = (sr * f_left - sl * f_right + sl * sr * (wr - wl)) / width
    return np.where(sl >= 0.0, f_left, np.where(sr <= 0.0, f_right, central))
