"""Irradiance time series on a fixed sampling grid, plus the scaling,
splitting and differencing transforms every model in this package
shares.

A series is a flat vector of values sampled every ``step`` minutes,
starting at midnight, covering a whole number of days. Keeping the grid
implicit (start + index * step) makes irregular spacing unrepresentable;
the CSV loader is where raw files get validated against this contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, time, timedelta

import numpy as np

from .errors import DataValidationError

MINUTES_PER_DAY = 1440


@dataclass(frozen=True)
class IrradianceSeries:
    """Fixed-step series of irradiance samples spanning whole days.

    ``values`` are W/m2 for raw data; the same container carries
    standardized (z) and ensemble-deducted values, which may be
    negative, so non-negativity is enforced by the loaders rather
    than here.
    """

    start: datetime
    values: np.ndarray
    step: int = 10

    def __post_init__(self) -> None:
        if self.step <= 0 or MINUTES_PER_DAY % self.step != 0:
            raise DataValidationError(
                f"step must be a positive divisor of {MINUTES_PER_DAY} minutes, got {self.step}"
            )
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise DataValidationError("series values must be one-dimensional")
        if values.size == 0:
            raise DataValidationError("series must contain at least one sample")
        if not np.all(np.isfinite(values)):
            raise DataValidationError("series contains non-finite values")
        spd = MINUTES_PER_DAY // self.step
        if values.size % spd != 0:
            raise DataValidationError(
                f"series length {values.size} is not a whole number of days "
                f"({spd} samples per day at step {self.step})"
            )
        if self.start.time() != time(0, 0) or self.start.second or self.start.microsecond:
            raise DataValidationError(
                f"series must start at midnight for day alignment, got {self.start.isoformat()}"
            )
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def samples_per_day(self) -> int:
        return MINUTES_PER_DAY // self.step

    @property
    def n_days(self) -> int:
        return self.values.size // self.samples_per_day

    def __len__(self) -> int:
        return self.values.size

    def timestamp(self, index: int) -> datetime:
        return self.start + timedelta(minutes=index * self.step)

    def timestamps(self) -> list[datetime]:
        return [self.timestamp(i) for i in range(len(self))]

    def day_matrix(self) -> np.ndarray:
        """Values as an (n_days, samples_per_day) array."""
        return self.values.reshape(self.n_days, self.samples_per_day)

    def with_values(self, values: np.ndarray) -> "IrradianceSeries":
        """Same grid, new values."""
        values = np.asarray(values, dtype=np.float64)
        if values.shape != self.values.shape:
            raise DataValidationError(
                f"replacement values have shape {values.shape}, expected {self.values.shape}"
            )
        return IrradianceSeries(start=self.start, values=values, step=self.step)


@dataclass(frozen=True)
class Scaler:
    """Mean/standard-deviation pair fitted on training values only."""

    mu: float
    sigma: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.mu) or not np.isfinite(self.sigma):
            raise DataValidationError("scaler parameters must be finite")
        if self.sigma <= 0:
            raise DataValidationError(f"scaler sigma must be positive, got {self.sigma}")


@dataclass(frozen=True)
class SplitIndex:
    """Chronological train/test boundary, snapped to a day boundary."""

    train_end: int
    fraction: float


@dataclass(frozen=True)
class DaylightWindow:
    """Inclusive time-of-day interval, in minutes since midnight,
    over which forecasts and percentage errors are defined."""

    start_minute: int = 360
    end_minute: int = 1110

    def __post_init__(self) -> None:
        if not 0 <= self.start_minute < self.end_minute < MINUTES_PER_DAY:
            raise DataValidationError(
                f"daylight window {self.start_minute}..{self.end_minute} is not a "
                "valid intra-day interval"
            )

    @classmethod
    def parse(cls, text: str) -> "DaylightWindow":
        """Parse 'HH:MM-HH:MM'."""
        try:
            lo, hi = text.split("-")
            h0, m0 = (int(p) for p in lo.strip().split(":"))
            h1, m1 = (int(p) for p in hi.strip().split(":"))
        except ValueError as exc:
            raise DataValidationError(f"cannot parse daylight window {text!r}") from exc
        return cls(start_minute=h0 * 60 + m0, end_minute=h1 * 60 + m1)

    def __str__(self) -> str:
        return (
            f"{self.start_minute // 60:02d}:{self.start_minute % 60:02d}-"
            f"{self.end_minute // 60:02d}:{self.end_minute % 60:02d}"
        )

    def slot_bounds(self, step: int) -> tuple[int, int]:
        """First and last in-window slot indices (inclusive) on a grid
        of ``step`` minutes."""
        if self.start_minute % step or self.end_minute % step:
            raise DataValidationError(
                f"daylight window {self} does not fall on the {step}-minute grid"
            )
        return self.start_minute // step, self.end_minute // step

    def slot_count(self, step: int) -> int:
        lo, hi = self.slot_bounds(step)
        return hi - lo + 1


@dataclass(frozen=True)
class DifferencedSeries:
    """Lag-1 differences plus the anchor subtracted from the first
    element, so the original signal is recoverable by cumulative sum."""

    deltas: np.ndarray
    anchor: float = 0.0

    def __post_init__(self) -> None:
        deltas = np.asarray(self.deltas, dtype=np.float64)
        deltas.setflags(write=False)
        object.__setattr__(self, "deltas", deltas)

    def reconstruct(self) -> np.ndarray:
        return np.cumsum(self.deltas) + self.anchor


def _as_values(series: IrradianceSeries | np.ndarray) -> np.ndarray:
    if isinstance(series, IrradianceSeries):
        return series.values
    return np.asarray(series, dtype=np.float64)


def split_index(series: IrradianceSeries, fraction: float = 0.70) -> SplitIndex:
    """Day index of the first test day for a chronological split,
    rounding the boundary down to a day boundary."""
    if not 0.0 < fraction < 1.0:
        raise DataValidationError(f"split fraction must lie in (0, 1), got {fraction}")
    if series.n_days < 2:
        raise DataValidationError("series must span at least two whole days to split")
    train_days = int(fraction * series.n_days)
    if train_days < 1 or train_days >= series.n_days:
        raise DataValidationError(
            f"fraction {fraction} on {series.n_days} days leaves an empty train or test half"
        )
    return SplitIndex(train_end=train_days, fraction=fraction)


def split(
    series: IrradianceSeries, fraction: float = 0.70
) -> tuple[IrradianceSeries, IrradianceSeries]:
    """Chronological train/test split on a day boundary. Train strictly
    precedes test; the halves never overlap."""
    idx = split_index(series, fraction)
    spd = series.samples_per_day
    cut = idx.train_end * spd
    train = IrradianceSeries(series.start, series.values[:cut], series.step)
    test = IrradianceSeries(
        series.start + timedelta(days=idx.train_end), series.values[cut:], series.step
    )
    return train, test


def fit_scaler(train: IrradianceSeries | np.ndarray) -> Scaler:
    """Mean and population standard deviation of the training values."""
    values = _as_values(train)
    if values.size == 0:
        raise DataValidationError("cannot fit a scaler on an empty series")
    mu = float(np.mean(values))
    sigma = float(np.std(values))
    if sigma == 0.0:
        raise DataValidationError("cannot fit a scaler on a constant-valued series")
    return Scaler(mu=mu, sigma=sigma)


def standardize(series: IrradianceSeries, scaler: Scaler) -> IrradianceSeries:
    return series.with_values((series.values - scaler.mu) / scaler.sigma)


def destandardize(series: IrradianceSeries, scaler: Scaler) -> IrradianceSeries:
    return series.with_values(series.values * scaler.sigma + scaler.mu)


def difference_transform(series: IrradianceSeries | np.ndarray) -> DifferencedSeries:
    """Lag-1 difference with the first element anchored at zero:
    [x0 - 0, x1 - x0, ..., xn - x(n-1)]."""
    values = _as_values(series)
    if values.size < 2:
        raise DataValidationError("difference transform needs at least two samples")
    deltas = np.empty_like(values)
    deltas[0] = values[0]
    deltas[1:] = np.diff(values)
    return DifferencedSeries(deltas=deltas, anchor=0.0)


def inverse_difference(
    pred_deltas: DifferencedSeries | np.ndarray, anchors: np.ndarray
) -> np.ndarray:
    """Reconstruct predicted values from predicted changes: each output
    is the predicted delta plus the most recent past value (zero for a
    signal's first element)."""
    deltas = pred_deltas.deltas if isinstance(pred_deltas, DifferencedSeries) else np.asarray(
        pred_deltas, dtype=np.float64
    )
    anchors = np.asarray(anchors, dtype=np.float64)
    if deltas.shape != anchors.shape:
        raise DataValidationError(
            f"need one anchor per predicted delta, got {anchors.shape} anchors "
            f"for {deltas.shape} deltas"
        )
    return deltas + anchors
