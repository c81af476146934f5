from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING

from iga_fsi.application.ports import PatchExecutor

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    import numpy as np
    from numpy.typing import NDArray

logger = logging.getLogger(__name__)


class SerialPatchExecutor(PatchExecutor):
    """Runs chunks one after another on the calling thread."""

    def map(
        self,
        task: Callable[[NDArray[np.intp]], NDArray[np.float64]],
        chunks: Sequence[NDArray[np.intp]],
    ) -> list[NDArray[np.float64]]:
        return [task(chunk) for chunk in chunks]


class ThreadPatchExecutor(PatchExecutor):
    """Runs chunks on a thread pool.

    Implementation notes:
    - numpy releases the GIL inside einsum and BLAS calls, which is where
      volume assembly spends its time
    - Executor.map yields results in submission order, so the caller's
      reduction order is independent of the thread count
    """

    def __init__(self, threads: int) -> None:
        if threads < 1:
            raise ValueError(f"Thread count must be positive, got {threads}")
        self.threads = threads
        self._pool = ThreadPoolExecutor(max_workers=threads, thread_name_prefix="patches")
        logger.debug("Patch executor with %d threads", threads)

    def map(
        self,
        task: Callable[[NDArray[np.intp]], NDArray[np.float64]],
        chunks: Sequence[NDArray[np.intp]],
    ) -> list[NDArray[np.float64]]:
        return list(self._pool.map(task, chunks))

    def close(self) -> None:
        self._pool.shutdown(wait=True)


def executor_for(threads: int) -> PatchExecutor:
    return SerialPatchExecutor() if threads <= 1 else ThreadPatchExecutor(threads)
