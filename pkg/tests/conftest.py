"""Shared fixtures and independent simulation helpers.

Oracles here are deliberately written as plain loops or closed forms,
never by calling the code paths they check.
"""

from __future__ import annotations

from datetime import datetime

import numpy as np
import pytest

from solarcast import DaylightWindow, IrradianceSeries, generate_synthetic

# AR(4) coefficients with a clean PACF signature: every partial
# autocorrelation at lags 1..4 stays above 0.2 in magnitude while lags
# 5+ sit near zero, across seeds.
AR4_COEFFS = (0.5, -0.35, 0.25, 0.3)

FULL_DAY_WINDOW = DaylightWindow(0, 1430)


def simulate_ar(coeffs, n: int, seed: int, noise: float = 1.0, burn: int = 500) -> np.ndarray:
    """Drive an autoregression with seeded Gaussian innovations and
    drop the burn-in."""
    rng = np.random.default_rng(seed)
    p = len(coeffs)
    coeffs = np.asarray(coeffs, dtype=np.float64)
    x = np.zeros(n + burn)
    eps = rng.standard_normal(n + burn) * noise
    for t in range(p, n + burn):
        x[t] = float(np.dot(coeffs, x[t - p : t][::-1])) + eps[t]
    return x[burn:]


def sinusoid_recurrence(n: int, w1: float = 0.7, w2: float = 1.9) -> tuple[np.ndarray, np.ndarray]:
    """A bounded signal satisfying an exact order-4 linear recurrence:
    the sum of two undamped sinusoids. Returns (signal, coefficients),
    with coefficients derived in closed form from the characteristic
    polynomial (z^2 - 2cos(w1) z + 1)(z^2 - 2cos(w2) z + 1)."""
    c1, c2 = np.cos(w1), np.cos(w2)
    coeffs = np.array([2 * (c1 + c2), -(2 + 4 * c1 * c2), 2 * (c1 + c2), -1.0])
    t = np.arange(n)
    signal = np.sin(w1 * t + 0.3) + np.sin(w2 * t + 1.1)
    return signal, coeffs


def make_series(values, step: int = 10, start: datetime | None = None) -> IrradianceSeries:
    return IrradianceSeries(start or datetime(2024, 1, 1), np.asarray(values, dtype=np.float64), step)


@pytest.fixture(scope="session")
def mixed_30d() -> IrradianceSeries:
    return generate_synthetic(30, "mixed", seed=101)


@pytest.fixture(scope="session")
def cloudy_30d() -> IrradianceSeries:
    return generate_synthetic(30, "cloudy", seed=202)


@pytest.fixture(scope="session")
def clear_10d() -> IrradianceSeries:
    return generate_synthetic(10, "clear", seed=303)
