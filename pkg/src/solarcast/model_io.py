"""Versioned flat-text persistence for fitted models.

Both formats are line oriented: a magic+version first line, then
``key value...`` records. Floats are written with 17 significant
digits, which round-trips IEEE doubles exactly, so a loaded model
forecasts bit-identically to the one that was saved.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import DataValidationError
from .mar import MarModel
from .series import DaylightWindow, Scaler
from .stats import EnsembleProfile

MAR_MAGIC = "mar-model v1"
NN_MAGIC = "nn-model v1"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_vec(values: np.ndarray) -> str:
    return " ".join(_fmt(v) for v in np.asarray(values, dtype=np.float64))


def _parse_vec(text: str) -> np.ndarray:
    return np.array([float(tok) for tok in text.split()], dtype=np.float64)


class _RecordReader:
    """Sequential ``key value`` reader with useful errors."""

    def __init__(self, path: str | os.PathLike, magic: str):
        try:
            with open(path, encoding="utf-8") as fh:
                self.lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
        except FileNotFoundError:
            raise DataValidationError(f"model file not found: {path}") from None
        self.path = path
        if not self.lines:
            raise DataValidationError(f"{path}: empty model file")
        if self.lines[0] != magic:
            raise DataValidationError(
                f"{path}: expected a {magic!r} file, got {self.lines[0]!r}"
            )
        self.pos = 1

    def done(self) -> bool:
        return self.pos >= len(self.lines)

    def peek_key(self) -> str | None:
        if self.done():
            return None
        return self.lines[self.pos].split(" ", 1)[0]

    def take(self, key: str) -> str:
        if self.done():
            raise DataValidationError(f"{self.path}: missing record {key!r}")
        line = self.lines[self.pos]
        head, _, rest = line.partition(" ")
        if head != key:
            raise DataValidationError(
                f"{self.path}: expected record {key!r}, found {head!r}"
            )
        self.pos += 1
        return rest


def save_mar_model(model: MarModel, path: str | os.PathLike) -> None:
    lines = [
        MAR_MAGIC,
        f"step {model.step}",
        f"order {model.order}",
        f"horizons {','.join(str(h) for h in model.horizons)}",
        f"ensemble {int(model.ensemble_enabled)}",
        f"daylight {model.daylight.start_minute} {model.daylight.end_minute}",
        f"scaler {_fmt(model.scaler.mu)} {_fmt(model.scaler.sigma)}",
        f"profile_means {_fmt_vec(model.profile.means)}",
        f"profile_support {' '.join(str(int(c)) for c in model.profile.support_counts)}",
    ]
    for h in model.horizons:
        lines.append(f"weights {h} {_fmt_vec(model.weights[h])}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_mar_model(path: str | os.PathLike) -> MarModel:
    reader = _RecordReader(path, MAR_MAGIC)
    step = int(reader.take("step"))
    order = int(reader.take("order"))
    horizons = tuple(int(tok) for tok in reader.take("horizons").split(","))
    ensemble_enabled = bool(int(reader.take("ensemble")))
    day_lo, day_hi = (int(tok) for tok in reader.take("daylight").split())
    mu, sigma = (float(tok) for tok in reader.take("scaler").split())
    means = _parse_vec(reader.take("profile_means"))
    support = np.array([int(tok) for tok in reader.take("profile_support").split()])
    weights: dict[int, np.ndarray] = {}
    while not reader.done():
        rest = reader.take("weights")
        h_text, _, vec_text = rest.partition(" ")
        weights[int(h_text)] = _parse_vec(vec_text)
    missing = [h for h in horizons if h not in weights]
    if missing:
        raise DataValidationError(f"{path}: missing weight vectors for horizons {missing}")
    return MarModel(
        order=order,
        horizons=horizons,
        weights=weights,
        scaler=Scaler(mu=mu, sigma=sigma),
        profile=EnsembleProfile(means=means, support_counts=support),
        daylight=DaylightWindow(start_minute=day_lo, end_minute=day_hi),
        step=step,
        ensemble_enabled=ensemble_enabled,
    )


def save_nn_models(models: list, path: str | os.PathLike) -> None:
    """Persist one or more fitted networks of the same kind (one per
    horizon) into a single file."""
    from .nn.training import NeuralModel  # local import to avoid a cycle

    if not models:
        raise DataValidationError("nothing to save")
    kinds = {m.kind for m in models}
    if len(kinds) != 1:
        raise DataValidationError(f"cannot mix network kinds in one file: {sorted(kinds)}")
    first: NeuralModel = models[0]
    lines = [
        NN_MAGIC,
        f"kind {first.kind}",
        f"step {first.step}",
        f"window {first.window}",
        f"daylight {first.daylight.start_minute} {first.daylight.end_minute}",
        f"scaler {_fmt(first.scaler.mu)} {_fmt(first.scaler.sigma)}",
        f"spec {first.spec_text()}",
    ]
    for model in models:
        lines.append(f"horizon {model.horizon}")
        for name in sorted(model.params):
            arr = model.params[name]
            shape = ",".join(str(s) for s in arr.shape)
            lines.append(f"param {name} {shape} {_fmt_vec(arr.reshape(-1))}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_nn_models(path: str | os.PathLike) -> dict[int, "object"]:
    """Load every horizon section from an ``nn-model v1`` file; returns
    {horizon: NeuralModel}."""
    from .nn.networks import ConvSpec, LstmSpec
    from .nn.training import NeuralModel

    reader = _RecordReader(path, NN_MAGIC)
    kind = reader.take("kind")
    step = int(reader.take("step"))
    window = int(reader.take("window"))
    day_lo, day_hi = (int(tok) for tok in reader.take("daylight").split())
    mu, sigma = (float(tok) for tok in reader.take("scaler").split())
    spec_text = reader.take("spec")
    if kind == "cnn":
        spec = ConvSpec.from_text(spec_text)
    elif kind == "lstm":
        spec = LstmSpec.from_text(spec_text)
    else:
        raise DataValidationError(f"{path}: unknown network kind {kind!r}")

    models: dict[int, NeuralModel] = {}
    while not reader.done():
        horizon = int(reader.take("horizon"))
        params: dict[str, np.ndarray] = {}
        while reader.peek_key() == "param":
            rest = reader.take("param")
            name, shape_text, vec_text = rest.split(" ", 2)
            shape = tuple(int(s) for s in shape_text.split(","))
            params[name] = _parse_vec(vec_text).reshape(shape)
        if not params:
            raise DataValidationError(f"{path}: horizon {horizon} has no parameters")
        models[horizon] = NeuralModel(
            kind=kind,
            spec=spec,
            horizon=horizon,
            params=params,
            scaler=Scaler(mu=mu, sigma=sigma),
            daylight=DaylightWindow(start_minute=day_lo, end_minute=day_hi),
            step=step,
            window=window,
            loss_curve=[],
        )
    if not models:
        raise DataValidationError(f"{path}: no horizon sections found")
    return models
