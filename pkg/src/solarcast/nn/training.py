"""Window construction, training loops, and forecast post-processing
for the neural baselines.

Both networks consume windows of the 4 most recent samples and follow
the same daylight row policy as the autoregressive design matrix, so
every model forecasts exactly the same target slots.

The CNN works on lag-1 differences of the standardized signal (the
difference transform detrends the bell shape); its target is the
cumulative change from the last observed sample to the target slot,
which for a 1-step horizon is exactly the lag-1 difference, and its
predictions are reconstructed by adding back the last observed value.
The LSTM works on the standardized signal directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DataValidationError, NumericalError, UsageError
from ..metrics import ForecastReport
from ..series import DaylightWindow, IrradianceSeries, Scaler, fit_scaler, standardize
from .adam import Adam
from .networks import CnnNetwork, ConvSpec, LstmNetwork, LstmSpec

MIN_TRAINING_WINDOWS = 1000


@dataclass
class WindowSet:
    """Model-ready windows plus the bookkeeping needed to map
    predictions back onto the series."""

    inputs: np.ndarray        # (rows, window, 1), chronological
    targets: np.ndarray       # (rows,)
    anchors: np.ndarray       # standardized value at the last observed slot
    sample_index: np.ndarray  # flat index of each row's target slot
    differenced: bool


def build_windows(
    z: IrradianceSeries,
    window: int,
    horizon: int,
    daylight: DaylightWindow,
    differenced: bool,
) -> WindowSet:
    """One row per day and in-window target slot with full lag support,
    matching the autoregressive row policy exactly.

    For differenced rows the per-day difference starts at the daylight
    window's first slot (anchored at zero), so no feature ever reaches
    outside the window.
    """
    lo, hi = daylight.slot_bounds(z.step)
    day_matrix = z.day_matrix()
    spd = z.samples_per_day

    inputs, targets, anchors, sample_index = [], [], [], []
    for d, day in enumerate(day_matrix):
        segment = day[lo : hi + 1]
        if differenced:
            feature_seq = np.empty_like(segment)
            feature_seq[0] = segment[0]
            feature_seq[1:] = np.diff(segment)
        else:
            feature_seq = segment
        for t in range(lo + window + horizon - 1, hi + 1):
            base = t - horizon + 1          # first unobserved slot
            r = base - lo                   # base, relative to the window segment
            inputs.append(feature_seq[r - window : r])
            anchor = day[base - 1]
            if differenced:
                targets.append(day[t] - anchor)
            else:
                targets.append(day[t])
            anchors.append(anchor)
            sample_index.append(d * spd + t)

    if not inputs:
        raise DataValidationError(
            f"no usable windows: daylight window too narrow for window {window} "
            f"and horizon {horizon}"
        )
    return WindowSet(
        inputs=np.asarray(inputs)[:, :, None],
        targets=np.asarray(targets),
        anchors=np.asarray(anchors),
        sample_index=np.asarray(sample_index, dtype=np.int64),
        differenced=differenced,
    )


@dataclass
class NeuralModel:
    """A trained network for one forecast horizon, with the frozen
    scaler and window policy it was trained under."""

    kind: str
    spec: ConvSpec | LstmSpec
    horizon: int
    params: dict[str, np.ndarray]
    scaler: Scaler
    daylight: DaylightWindow
    step: int
    window: int
    loss_curve: list[float] = field(default_factory=list)

    def network(self):
        if self.kind == "cnn":
            return CnnNetwork(spec=self.spec, params=self.params)
        if self.kind == "lstm":
            return LstmNetwork(spec=self.spec, params=self.params)
        raise UsageError(f"unknown network kind {self.kind!r}")

    def spec_text(self) -> str:
        return self.spec.to_text()


def mse_loss(pred: np.ndarray, target: np.ndarray) -> tuple[float, np.ndarray]:
    """Mean squared error and its gradient with respect to pred."""
    diff = pred - target
    return float(np.mean(diff**2)), 2.0 * diff / diff.size


def _train(
    network,
    windows: WindowSet,
    epochs: int,
    batch_size: int,
    seed: int,
    lr_schedule,
) -> list[float]:
    rng = np.random.default_rng(seed)
    optimizer = Adam(learning_rate=lr_schedule(0))
    n = windows.targets.size
    loss_curve: list[float] = []
    for epoch in range(epochs):
        optimizer.learning_rate = lr_schedule(epoch)
        order = rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, batch_size):
            batch = order[start : start + batch_size]
            x = windows.inputs[batch]
            y = windows.targets[batch]
            pred, cache = network.forward_with_cache(x)
            loss, grad_pred = mse_loss(pred, y)
            grads = network.backward(cache, grad_pred)
            optimizer.step(network.params, grads)
            epoch_loss += loss * batch.size
        epoch_loss /= n
        if not np.isfinite(epoch_loss):
            raise NumericalError(f"training diverged at epoch {epoch + 1}: loss {epoch_loss}")
        loss_curve.append(epoch_loss)
    return loss_curve


def _prepare(
    train: IrradianceSeries,
    window: int,
    horizon: int,
    daylight: DaylightWindow | None,
    scaler: Scaler | None,
    differenced: bool,
) -> tuple[WindowSet, Scaler, DaylightWindow]:
    daylight = daylight or DaylightWindow()
    scaler = scaler or fit_scaler(train)
    z = standardize(train, scaler)
    windows = build_windows(z, window, horizon, daylight, differenced)
    if windows.targets.size < MIN_TRAINING_WINDOWS:
        raise DataValidationError(
            f"{windows.targets.size} training windows; need at least {MIN_TRAINING_WINDOWS}"
        )
    return windows, scaler, daylight


def train_cnn(
    train: IrradianceSeries,
    spec: ConvSpec | None = None,
    horizon: int = 1,
    daylight: DaylightWindow | None = None,
    seed: int = 0,
    scaler: Scaler | None = None,
) -> NeuralModel:
    """Train the convolutional baseline for one horizon. Deterministic
    under a fixed seed."""
    spec = spec or ConvSpec()
    windows, scaler, daylight = _prepare(train, spec.window, horizon, daylight, scaler, True)
    network = CnnNetwork(spec=spec, seed=seed)
    loss_curve = _train(
        network,
        windows,
        epochs=spec.epochs,
        batch_size=spec.batch_size,
        seed=seed,
        lr_schedule=lambda epoch: spec.learning_rate,
    )
    return NeuralModel(
        kind="cnn",
        spec=spec,
        horizon=horizon,
        params=network.params,
        scaler=scaler,
        daylight=daylight,
        step=train.step,
        window=spec.window,
        loss_curve=loss_curve,
    )


def train_lstm(
    train: IrradianceSeries,
    spec: LstmSpec | None = None,
    horizon: int = 1,
    daylight: DaylightWindow | None = None,
    seed: int = 0,
    scaler: Scaler | None = None,
) -> NeuralModel:
    """Train the recurrent baseline for one horizon; the learning rate
    is multiplied by the drop factor every drop period."""
    spec = spec or LstmSpec()
    windows, scaler, daylight = _prepare(train, spec.window, horizon, daylight, scaler, False)
    network = LstmNetwork(spec=spec, seed=seed)
    loss_curve = _train(
        network,
        windows,
        epochs=spec.epochs,
        batch_size=spec.batch_size,
        seed=seed,
        lr_schedule=lambda epoch: spec.initial_lr
        * spec.lr_drop_factor ** (epoch // spec.lr_drop_period),
    )
    return NeuralModel(
        kind="lstm",
        spec=spec,
        horizon=horizon,
        params=network.params,
        scaler=scaler,
        daylight=daylight,
        step=train.step,
        window=spec.window,
        loss_curve=loss_curve,
    )


def nn_forecast(
    model: NeuralModel, test: IrradianceSeries, horizon: int | None = None
) -> ForecastReport:
    """Forecast the test series: apply the model's own pre-processing,
    predict, invert the post-processing, clip at zero."""
    if horizon is not None and horizon != model.horizon:
        raise UsageError(
            f"model was trained for horizon {model.horizon}, not {horizon}"
        )
    if test.step != model.step:
        raise DataValidationError(
            f"test series step {test.step} does not match model step {model.step}"
        )
    z = standardize(test, model.scaler)
    windows = build_windows(
        z, model.window, model.horizon, model.daylight, differenced=(model.kind == "cnn")
    )
    network = model.network()
    pred = network.predict(windows.inputs)
    if windows.differenced:
        pred = pred + windows.anchors
    pred_raw = np.clip(pred * model.scaler.sigma + model.scaler.mu, 0.0, None)
    return ForecastReport(
        model=model.kind,
        horizon=model.horizon,
        timestamps=[test.timestamp(int(i)) for i in windows.sample_index],
        actual=test.values[windows.sample_index],
        predicted=pred_raw,
    )


def loss_curve_csv(model: NeuralModel) -> str:
    lines = ["epoch,loss"]
    for epoch, loss in enumerate(model.loss_curve, start=1):
        lines.append(f"{epoch},{loss:.17g}")
    return "\n".join(lines) + "\n"
