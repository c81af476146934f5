"""Dense solvers used by the structural and flow discretisations.

Every numpy/scipy LinAlgError is translated into SingularMatrixError so callers
only handle domain exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import scipy.linalg

from iga_fsi.domain.exceptions import SingularMatrixError

if TYPE_CHECKING:
    from numpy.typing import NDArray


@dataclass(frozen=True, slots=True, eq=False)
class CholeskyFactor:
    """Cholesky factorisation of a symmetric positive definite matrix."""

    factor: tuple[NDArray[np.float64], bool]

    @classmethod
    def of(cls, matrix: NDArray[np.float64]) -> CholeskyFactor:
        try:
            return cls(scipy.linalg.cho_factor(matrix, check_finite=True))
        except (np.linalg.LinAlgError, ValueError) as e:
            raise SingularMatrixError(f"Matrix is not symmetric positive definite: {e}") from e

    def solve(self, rhs: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.asarray(scipy.linalg.cho_solve(self.factor, rhs))


def cholesky_solve(matrix: NDArray[np.float64], rhs: NDArray[np.float64]) -> NDArray[np.float64]:
    return CholeskyFactor.of(matrix).solve(rhs)


def dense_solve(matrix: NDArray[np.float64], rhs: NDArray[np.float64]) -> NDArray[np.float64]:
    """LU solve of a general square system."""
    try:
        solution = scipy.linalg.solve(matrix, rhs, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise SingularMatrixError(f"Linear system could not be solved: {e}") from e
    if not np.all(np.isfinite(solution)):
        raise SingularMatrixError("Linear solve produced non-finite values")
    return np.asarray(solution)


def batched_inverse(blocks: NDArray[np.float64]) -> NDArray[np.float64]:
    """Inverse of every (n, n) block of a (K, n, n) stack."""
    try:
        inverse = np.linalg.inv(blocks)
    except np.linalg.LinAlgError as e:
        raise SingularMatrixError(f"Block matrix is singular: {e}") from e
    if not np.all(np.isfinite(inverse)):
        raise SingularMatrixError("Block inverse produced non-finite values")
    return inverse


def restrict(matrix: NDArray[np.float64], free: NDArray[np.intp]) -> NDArray[np.float64]:
    """Rows and columns of the free DOFs (Dirichlet elimination)."""
    return matrix[np.ix_(free, free)]
