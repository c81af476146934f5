from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    import numpy as np
    from numpy.typing import NDArray


class PatchExecutor(ABC):
    """Port for patch-parallel volume assembly.

    Contract:
    - map() returns one result per chunk, in chunk order, whatever the
      scheduling; callers rely on this for bitwise-reproducible sums
    - tasks only read shared arrays
    - close() releases workers; map() is not called afterwards
    """

    @abstractmethod
    def map(
        self,
        task: Callable[[NDArray[np.intp]], NDArray[np.float64]],
        chunks: Sequence[NDArray[np.intp]],
    ) -> list[NDArray[np.float64]]: ...

    def close(self) -> None:  # noqa: B027
        """Release worker resources."""
