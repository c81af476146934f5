"""Ideal-gas equation of state and conversions between variable sets.

Conservative states are arrays whose last axis is (rho, rho u1, rho u2, rho e),
e being the total specific energy.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import PositivityError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.value_objects import GasModel


def pressure(w: ArrayLike, gas: GasModel) -> NDArray[np.float64]:
    """p = (gamma - 1) (rho e - |rho u|^2 / (2 rho))."""
    w = np.asarray(w, dtype=np.float64)
    kinetic = 0.5 * (w[..., 1] ** 2 + w[..., 2] ** 2) / w[..., 0]
    return (gas.gamma - 1.0) * (w[..., 3] - kinetic)


def primitive(
    w: ArrayLike, gas: GasModel
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """(rho, u (..., 2), p)."""
    w = np.asarray(w, dtype=np.float64)
    rho = w[..., 0]
    return rho, w[..., 1:3] / rho[..., None], pressure(w, gas)


def conservative(
    rho: ArrayLike, u1: ArrayLike, u2: ArrayLike, p: ArrayLike, gas: GasModel
) -> NDArray[np.float64]:
    r, a, b, q = np.broadcast_arrays(*(np.asarray(v, dtype=np.float64) for v in (rho, u1, u2, p)))
    energy = q / (gas.gamma - 1.0) + 0.5 * r * (a * a + b * b)
    return np.stack([r, r * a, r * b, energy], axis=-1)


def sound_speed(w: ArrayLike, gas: GasModel) -> NDArray[np.float64]:
    w = np.asarray(w, dtype=np.float64)
    return np.sqrt(gas.gamma * pressure(w, gas) / w[..., 0])


def mach_number(w: ArrayLike, gas: GasModel) -> NDArray[np.float64]:
    _, u, _ = primitive(w, gas)
    return np.linalg.norm(u, axis=-1) / sound_speed(w, gas)


def check_positivity(w: NDArray[np.float64], gas: GasModel) -> None:
    """Raise PositivityError when rho or p is not positive.

    `w` has shape (K, m, 4); the error lists the offending patches.
    """
    rho = w[..., 0]
    bad_rho = ~(rho > 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = pressure(w, gas)
    bad = bad_rho | ~(p > 0.0)
    if np.any(bad):
        patches = np.nonzero(bad.reshape(bad.shape[0], -1).any(axis=1))[0]
        raise PositivityError(
            f"Non-physical state (rho or p <= 0) on {patches.size} patch(es)",
            patches.tolist(),
        )
