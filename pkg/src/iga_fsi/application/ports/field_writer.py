from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Mapping

    import numpy as np
    from numpy.typing import NDArray


class FieldWriter(ABC):
    """Port for visualisation snapshots.

    Contract:
    - write_patches() receives, per patch, an r x r grid of sample points
      (K, r*r, 2) stored at index i * r + j (xi index i, eta index j) and
      point data of leading shape (K, r*r)
    - write_wireframe() receives polyline points (L, m, 2)
    - both return the name of what was written
    """

    @abstractmethod
    def write_patches(
        self,
        name: str,
        points: NDArray[np.float64],
        resolution: int,
        point_data: Mapping[str, NDArray[np.float64]],
        time: float = 0.0,
    ) -> str: ...

    @abstractmethod
    def write_wireframe(self, name: str, polylines: NDArray[np.float64]) -> str: ...
