"""Time-series statistics of periodic responses.

Results are reported as mean +- amplitude with mean = (max + min) / 2 and
amplitude = (max - min) / 2 over the last few periods of the record.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.signal import detrend

from iga_fsi.domain.exceptions import DomainException

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

logger = logging.getLogger(__name__)

DEFAULT_PERIODS = 5
FALLBACK_FRACTION = 0.1


@dataclass(frozen=True, slots=True)
class Oscillation:
    mean: float
    amplitude: float
    frequency: float
    periods: int

    def as_dict(self) -> dict[str, float]:
        return {
            "mean": self.mean,
            "amplitude": self.amplitude,
            "frequency": self.frequency,
            "periods": float(self.periods),
        }


def upward_crossings(t: NDArray[np.float64], signal: NDArray[np.float64]) -> NDArray[np.float64]:
    """Times where the signal crosses zero from below, linearly interpolated."""
    below = signal[:-1] < 0.0
    above = signal[1:] >= 0.0
    idx = np.nonzero(below & above)[0]
    s0, s1 = signal[idx], signal[idx + 1]
    return t[idx] + (t[idx + 1] - t[idx]) * (-s0 / (s1 - s0))


def mean_amplitude(t: ArrayLike, signal: ArrayLike, periods: int = DEFAULT_PERIODS) -> Oscillation:
    """Mean, amplitude and frequency over the last `periods` periods.

    Periods are delimited by upward zero crossings of the linearly detrended
    second half of the record. With fewer than two crossings the last 10 % of
    the record is used and the frequency is 0.
    """
    times = np.asarray(t, dtype=np.float64)
    values = np.asarray(signal, dtype=np.float64)
    if times.shape != values.shape or times.size < 2:
        raise DomainException(f"Need matching series of length >= 2, got {times.shape}")
    if periods < 1:
        raise DomainException(f"Period count must be positive, got {periods}")

    half = times.size // 2
    crossings = upward_crossings(times[half:], detrend(values[half:], type="linear"))
    if crossings.size < 2:
        start = times[-1] - FALLBACK_FRACTION * (times[-1] - times[0])
        window = values[times >= start]
        found, frequency = 0, 0.0
    else:
        found = min(periods, crossings.size - 1)
        t0, t1 = crossings[-1 - found], crossings[-1]
        window = values[(times >= t0) & (times <= t1)]
        frequency = found / (t1 - t0)
    if window.size == 0:
        window = values[-1:]
    hi, lo = float(window.max()), float(window.min())
    return Oscillation(
        mean=0.5 * (hi + lo), amplitude=0.5 * (hi - lo), frequency=float(frequency), periods=found
    )


class ProfileAccumulator:
    """Time averages of station profiles (deflection, upper and lower C_p) after `start`.

    Samples are weighted by their step size, so the result is a time average
    even with a variable step.
    """

    def __init__(self, stations: ArrayLike, start: float = 0.0) -> None:
        self.stations = np.asarray(stations, dtype=np.float64)
        self.start = start
        self._weight = 0.0
        self._sums = np.zeros((3, self.stations.size))
        self._last = np.zeros(self.stations.size)

    @property
    def duration(self) -> float:
        return self._weight

    def add(
        self,
        time: float,
        dt: float,
        deflection: ArrayLike,
        cp_upper: ArrayLike,
        cp_lower: ArrayLike,
    ) -> None:
        self._last = np.asarray(deflection, dtype=np.float64)
        if time < self.start:
            return
        rows = np.stack([self._last, np.asarray(cp_upper), np.asarray(cp_lower)])
        self._sums += dt * rows
        self._weight += dt

    def means(self) -> NDArray[np.float64]:
        """Rows (mean deflection, mean C_p upper, mean C_p lower); zeros before any sample."""
        if self._weight == 0.0:
            logger.warning("Profile averages requested before the averaging window started")
            return np.zeros_like(self._sums)
        return self._sums / self._weight

    def deviation(self, deflection: ArrayLike | None = None) -> NDArray[np.float64]:
        """y(x, t) - mean y(x) for the given (or last added) deflection."""
        current = self._last if deflection is None else np.asarray(deflection, dtype=np.float64)
        return current - self.means()[0]
