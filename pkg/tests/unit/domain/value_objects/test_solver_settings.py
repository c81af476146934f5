"""Tests for Newmark and Newton-Raphson settings."""

import pytest

from iga_fsi.domain.exceptions import NumericsError
from iga_fsi.domain.value_objects import NewmarkParams, NewtonSettings


def test_newmark_defaults_are_average_acceleration() -> None:
    params = NewmarkParams(dt=0.01)
    assert (params.beta, params.gamma) == (0.25, 0.5)


@pytest.mark.parametrize(
    ("kwargs", "message"),
    [
        ({"dt": 0.0}, "step"),
        ({"dt": 1.0, "beta": 0.0}, "beta"),
        ({"dt": 1.0, "gamma": -1.0}, "gamma"),
    ],
)
def test_invalid_newmark(kwargs: dict[str, float], message: str) -> None:
    with pytest.raises(NumericsError, match=message):
        NewmarkParams(**kwargs)


@pytest.mark.parametrize(
    ("kwargs", "message"),
    [
        ({"tolerance": 0.0}, "tolerance"),
        ({"max_iterations": 0}, "at least one"),
        ({"absolute_tolerance": -1.0}, "Absolute"),
    ],
)
def test_invalid_newton(kwargs: dict[str, float], message: str) -> None:
    with pytest.raises(NumericsError, match=message):
        NewtonSettings(**kwargs)  # type: ignore[arg-type]
