"""Tests for oscillation statistics and time-averaged station profiles."""

import logging

import numpy as np
import pytest

from iga_fsi.domain.exceptions import DomainException
from iga_fsi.domain.services.statistics import (
    ProfileAccumulator,
    mean_amplitude,
    upward_crossings,
)


class TestMeanAmplitude:
    def test_sinusoid(self) -> None:
        t = np.linspace(0.0, 10.0, 20001)
        result = mean_amplitude(t, 0.3 + 2.0 * np.sin(2.0 * np.pi * 1.5 * t))
        assert result.mean == pytest.approx(0.3, abs=1e-4)
        assert result.amplitude == pytest.approx(2.0, rel=1e-4)
        assert result.frequency == pytest.approx(1.5, rel=1e-3)
        assert result.periods == 5

    def test_period_count_is_limited_by_record(self) -> None:
        t = np.linspace(0.0, 4.0, 4001)
        result = mean_amplitude(t, np.sin(2.0 * np.pi * t), periods=10)
        assert 1 <= result.periods < 10

    def test_without_oscillation_uses_record_tail(self) -> None:
        t = np.linspace(0.0, 1.0, 101)
        result = mean_amplitude(t, t)
        assert result.periods == 0
        assert result.frequency == 0.0
        assert result.mean == pytest.approx(0.95)
        assert result.amplitude == pytest.approx(0.05)
        assert result.as_dict()["periods"] == 0.0

    def test_crossings_are_interpolated(self) -> None:
        t = np.array([0.0, 1.0, 2.0, 3.0])
        crossings = upward_crossings(t, np.array([-1.0, 1.0, -1.0, 3.0]))
        np.testing.assert_allclose(crossings, [0.5, 2.25])

    def test_mismatched_series_rejected(self) -> None:
        with pytest.raises(DomainException, match="matching series"):
            mean_amplitude([0.0, 1.0], [1.0])

    def test_period_count_must_be_positive(self) -> None:
        with pytest.raises(DomainException, match="positive"):
            mean_amplitude([0.0, 1.0], [0.0, 1.0], periods=0)


class TestProfileAccumulator:
    def test_time_weighted_means_after_start(self) -> None:
        acc = ProfileAccumulator([0.25, 0.75], start=1.0)
        acc.add(0.5, 0.5, [9.0, 9.0], [9.0, 9.0], [9.0, 9.0])
        acc.add(1.0, 0.1, [1.0, 2.0], [0.0, 0.0], [1.0, 1.0])
        acc.add(1.1, 0.3, [3.0, 4.0], [4.0, 4.0], [1.0, 1.0])
        assert acc.duration == pytest.approx(0.4)
        np.testing.assert_allclose(acc.means(), [[2.5, 3.5], [3.0, 3.0], [1.0, 1.0]])
        np.testing.assert_allclose(acc.deviation(), [0.5, 0.5])
        np.testing.assert_allclose(acc.deviation([2.5, 3.5]), [0.0, 0.0], atol=1e-12)

    def test_means_before_window_warn(self, caplog: pytest.LogCaptureFixture) -> None:
        acc = ProfileAccumulator([0.5], start=2.0)
        acc.add(1.0, 0.1, [1.0], [1.0], [1.0])
        with caplog.at_level(logging.WARNING):
            np.testing.assert_allclose(acc.means(), np.zeros((3, 1)))
        assert "averaging window" in caplog.text
