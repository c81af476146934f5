"""Quadrature, dense solvers, Newton-Raphson, Newmark and Runge-Kutta."""

from iga_fsi.domain.services.numerics.linalg import (
    CholeskyFactor,
    batched_inverse,
    cholesky_solve,
    dense_solve,
    restrict,
)
from iga_fsi.domain.services.numerics.newmark import (
    initial_acceleration,
    newmark_step,
    newmark_step_nonlinear,
    predict,
)
from iga_fsi.domain.services.numerics.newton import NewtonResult, newton_solve
from iga_fsi.domain.services.numerics.quadrature import MAX_POINTS, gauss_legendre, tensor_rule
from iga_fsi.domain.services.numerics.runge_kutta import RK4_STAGE_FRACTIONS, rk4_step

__all__ = [
    "MAX_POINTS",
    "RK4_STAGE_FRACTIONS",
    "CholeskyFactor",
    "NewtonResult",
    "batched_inverse",
    "cholesky_solve",
    "dense_solve",
    "gauss_legendre",
    "initial_acceleration",
    "newmark_step",
    "newmark_step_nonlinear",
    "newton_solve",
    "predict",
    "restrict",
    "rk4_step",
    "tensor_rule",
]
