"""The ensemble-deducted autoregressive forecaster.

Pipeline: standardize with a scaler frozen on the training split,
subtract the per-slot ensemble profile, regress each target on its m
most recent lags by least squares (one weight vector per horizon), then
add the profile back, destandardize, and clip at zero. Disabling the
ensemble step yields the conventional AR baseline with an otherwise
identical pipeline.

Rows never leave the daylight window and never straddle midnight: a
target slot t at horizon h produces a row only when its lag slots
t-h+1-m .. t-h lie inside the window and t itself does.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DataValidationError, NumericalError, UsageError
from .metrics import ForecastReport
from .series import DaylightWindow, IrradianceSeries, Scaler, fit_scaler, standardize
from .stats import (
    EnsembleProfile,
    ensemble_deduct,
    ensemble_profile,
    partial_autocorrelation,
    select_order,
)

DEFAULT_HORIZONS = (1, 3, 6)
MIN_ROWS_PER_COLUMN = 10
ORTHOGONALITY_TOL = 1e-8


@dataclass(frozen=True)
class DesignMatrix:
    """Lagged training rows for one horizon.

    ``lags[i]`` holds the m values before the prediction base slot,
    most recent first; ``targets[i]`` is the value h steps ahead.
    """

    lags: np.ndarray
    targets: np.ndarray
    order: int
    horizon: int

    def __post_init__(self) -> None:
        lags = np.asarray(self.lags, dtype=np.float64)
        targets = np.asarray(self.targets, dtype=np.float64)
        if lags.ndim != 2 or targets.ndim != 1 or lags.shape[0] != targets.size:
            raise DataValidationError("design matrix rows and targets are misaligned")
        if lags.shape[1] != self.order:
            raise DataValidationError(
                f"design matrix has {lags.shape[1]} columns, expected order {self.order}"
            )
        lags.setflags(write=False)
        targets.setflags(write=False)
        object.__setattr__(self, "lags", lags)
        object.__setattr__(self, "targets", targets)

    @property
    def n_rows(self) -> int:
        return self.targets.size


@dataclass
class MarConfig:
    """Fit-time configuration. ``order=None`` selects the order from
    the PACF of the (ensemble-deducted) training data."""

    order: int | None = 4
    horizons: tuple[int, ...] = DEFAULT_HORIZONS
    daylight: DaylightWindow = field(default_factory=DaylightWindow)
    ensemble_enabled: bool = True
    pacf_max_lag: int = 12
    pacf_threshold: float = 0.1


@dataclass
class MarModel:
    """Fitted forecaster: order, per-horizon weights, and the frozen
    scaler/profile from the training split."""

    order: int
    horizons: tuple[int, ...]
    weights: dict[int, np.ndarray]
    scaler: Scaler
    profile: EnsembleProfile
    daylight: DaylightWindow
    step: int
    ensemble_enabled: bool = True

    def __post_init__(self) -> None:
        for h in self.horizons:
            w = np.asarray(self.weights.get(h), dtype=np.float64)
            if w.shape != (self.order,):
                raise DataValidationError(
                    f"horizon {h} weight vector has shape {w.shape}, expected ({self.order},)"
                )
            if not np.all(np.isfinite(w)):
                raise DataValidationError(f"horizon {h} weights contain non-finite values")
            self.weights[h] = w


def _target_slot_range(
    daylight: DaylightWindow, step: int, order: int, horizon: int
) -> range:
    """Target slots t for which the lag block and the target both fit
    inside the daylight window."""
    lo, hi = daylight.slot_bounds(step)
    return range(lo + order + horizon - 1, hi + 1)


def build_design_matrix(
    train: IrradianceSeries,
    order: int,
    horizon: int,
    daylight: DaylightWindow | None = None,
) -> DesignMatrix:
    """Emit one row per day and in-window target slot: m lags (most
    recent first) against the value ``horizon`` steps past the base."""
    if order < 1:
        raise DataValidationError(f"order must be >= 1, got {order}")
    if horizon < 1:
        raise DataValidationError(f"horizon must be >= 1, got {horizon}")
    daylight = daylight or DaylightWindow()
    targets_range = _target_slot_range(daylight, train.step, order, horizon)
    day_matrix = train.day_matrix()

    lag_rows: list[np.ndarray] = []
    target_vals: list[np.ndarray] = []
    for day in day_matrix:
        for t in targets_range:
            base = t - horizon + 1
            lag_rows.append(day[base - order : base][::-1])
            target_vals.append(day[t])
    n_rows = len(lag_rows)
    if n_rows < MIN_ROWS_PER_COLUMN * order:
        raise DataValidationError(
            f"only {n_rows} design rows for order {order}; need at least "
            f"{MIN_ROWS_PER_COLUMN * order} for a stable fit"
        )
    return DesignMatrix(
        lags=np.array(lag_rows), targets=np.array(target_vals), order=order, horizon=horizon
    )


def fit_weights(matrix: DesignMatrix) -> np.ndarray:
    """Least-squares weights minimizing the squared prediction error,
    via an SVD factorization (no explicit normal-matrix inverse)."""
    X, y = matrix.lags, matrix.targets
    if X.shape[0] < X.shape[1]:
        raise DataValidationError(
            f"underdetermined fit: {X.shape[0]} rows for {X.shape[1]} columns"
        )
    w, _, rank, singular_values = np.linalg.lstsq(X, y, rcond=None)
    if rank < matrix.order:
        cond = float(singular_values[0] / singular_values[-1]) if singular_values[-1] else np.inf
        raise NumericalError(
            f"rank-deficient design matrix: rank {rank} < order {matrix.order} "
            f"(condition estimate {cond:.3e})"
        )
    residual = X @ w - y
    gradient = np.abs(X.T @ residual).max()
    scale = np.abs(X.T @ y).max()
    if scale > 0 and gradient > ORTHOGONALITY_TOL * scale:
        raise NumericalError(
            f"normal-equation optimality violated: |X'r| = {gradient:.3e} "
            f"exceeds {ORTHOGONALITY_TOL} * |X'y| = {ORTHOGONALITY_TOL * scale:.3e}"
        )
    return w


def predict_step(model: MarModel, lags: np.ndarray, horizon: int) -> float:
    """Dot product of the horizon's weights with the m most recent
    values (most recent first)."""
    lags = np.asarray(lags, dtype=np.float64)
    if lags.shape != (model.order,):
        raise DataValidationError(
            f"expected {model.order} lag values, got shape {lags.shape}"
        )
    if horizon not in model.weights:
        raise UsageError(f"model has no weights for horizon {horizon}")
    return float(np.dot(model.weights[horizon], lags))


def fit_all_horizons(train: IrradianceSeries, config: MarConfig | None = None) -> MarModel:
    """Fit scaler, profile and per-horizon weight vectors on a raw
    training series. Deterministic: same data and config, same model."""
    config = config or MarConfig()
    if not config.horizons:
        raise DataValidationError("need at least one horizon")
    scaler = fit_scaler(train)
    z = standardize(train, scaler)
    profile = ensemble_profile(z)
    domain = ensemble_deduct(z, profile) if config.ensemble_enabled else z

    order = config.order
    if order is None:
        order = select_order(
            partial_autocorrelation(
                daylight_values(domain, config.daylight), config.pacf_max_lag
            ),
            threshold=config.pacf_threshold,
        )

    weights = {
        h: fit_weights(build_design_matrix(domain, order, h, config.daylight))
        for h in config.horizons
    }
    return MarModel(
        order=order,
        horizons=tuple(config.horizons),
        weights=weights,
        scaler=scaler,
        profile=profile,
        daylight=config.daylight,
        step=train.step,
        ensemble_enabled=config.ensemble_enabled,
    )


def daylight_values(series: IrradianceSeries, daylight: DaylightWindow | None = None) -> np.ndarray:
    """In-window samples of every day, concatenated in time order."""
    daylight = daylight or DaylightWindow()
    lo, hi = daylight.slot_bounds(series.step)
    return series.day_matrix()[:, lo : hi + 1].reshape(-1)


def forecast(
    model: MarModel,
    test: IrradianceSeries,
    horizon: int,
    recursive: bool = False,
    label: str | None = None,
) -> ForecastReport:
    """Forecast every in-window slot of the test series with full lag
    support. Pure function of (model, test).

    ``recursive`` iterates the 1-step weights instead of using the
    horizon's own direct weights; the emitted row set is identical.
    """
    if test.step != model.step:
        raise DataValidationError(
            f"test series step {test.step} does not match model step {model.step}"
        )
    if recursive:
        if 1 not in model.weights:
            raise UsageError("recursive forecasting needs a fitted 1-step horizon")
    elif horizon not in model.weights:
        raise UsageError(f"model was not fitted for horizon {horizon}")

    z = standardize(test, model.scaler)
    base_series = ensemble_deduct(z, model.profile) if model.ensemble_enabled else z
    base_days = base_series.day_matrix()
    raw_days = test.day_matrix()
    spd = test.samples_per_day
    m = model.order

    timestamps = []
    actual = []
    predicted = []
    for d in range(test.n_days):
        day = base_days[d]
        for t in _target_slot_range(model.daylight, test.step, m, horizon):
            base = t - horizon + 1
            lag_vec = day[base - m : base][::-1]
            if recursive:
                pred_domain = _recurse(model.weights[1], lag_vec, horizon)
            else:
                pred_domain = float(np.dot(model.weights[horizon], lag_vec))
            pred_z = pred_domain + (model.profile.means[t] if model.ensemble_enabled else 0.0)
            pred = max(pred_z * model.scaler.sigma + model.scaler.mu, 0.0)
            timestamps.append(test.timestamp(d * spd + t))
            actual.append(raw_days[d, t])
            predicted.append(pred)

    name = label if label is not None else ("mar" if model.ensemble_enabled else "ar")
    return ForecastReport(
        model=name,
        horizon=horizon,
        timestamps=timestamps,
        actual=np.array(actual),
        predicted=np.array(predicted),
    )


def _recurse(w1: np.ndarray, lag_vec: np.ndarray, horizon: int) -> float:
    state = lag_vec.copy()
    pred = 0.0
    for _ in range(horizon):
        pred = float(np.dot(w1, state))
        state[1:] = state[:-1]
        state[0] = pred
    return pred
