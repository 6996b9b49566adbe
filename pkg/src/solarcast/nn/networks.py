"""The two baseline network architectures and their hyper-parameters.

CNN: one valid convolution (16 kernels of size 2, ReLU), average
pooling of size 1, then dense layers 16 -> 8 -> 1 (ReLU hidden,
identity output), trained with Adam at rate 0.005, batch 256, for 30
epochs on windows of the 4 most recent samples.

LSTM: one layer of 32 units unrolled over the 4-sample window, then
dense 8 -> 1, Adam starting at 0.05 with the rate dropped by 10x every
30 epochs, batch 256, 100 epochs.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from ..errors import DataValidationError
from .layers import (
    avg_pool_backward,
    avg_pool_forward,
    conv1d_backward,
    conv1d_forward,
    dense_backward,
    dense_forward,
)
from .lstm import GATE_PARAMS, lstm_sequence_backward, lstm_sequence_forward


def _spec_to_text(spec) -> str:
    return " ".join(f"{f.name}={getattr(spec, f.name)}" for f in fields(spec))


def _spec_from_text(cls, text: str):
    kwargs = {}
    types = {f.name: f.type for f in fields(cls)}
    for token in text.split():
        name, _, raw = token.partition("=")
        if name not in types:
            raise DataValidationError(f"unknown {cls.__name__} field {name!r}")
        kwargs[name] = float(raw) if types[name] == "float" else int(raw)
    return cls(**kwargs)


@dataclass(frozen=True)
class ConvSpec:
    kernel_count: int = 16
    kernel_size: int = 2
    pool_size: int = 1
    fc1_units: int = 16
    fc2_units: int = 8
    window: int = 4
    learning_rate: float = 0.005
    batch_size: int = 256
    epochs: int = 30

    def __post_init__(self) -> None:
        if self.kernel_size > self.window:
            raise DataValidationError(
                f"kernel size {self.kernel_size} exceeds the {self.window}-sample window"
            )
        conv_len = self.window - self.kernel_size + 1
        if conv_len % self.pool_size != 0:
            raise DataValidationError(
                f"conv output length {conv_len} is not divisible by pool size {self.pool_size}"
            )

    @property
    def flat_units(self) -> int:
        return (self.window - self.kernel_size + 1) // self.pool_size * self.kernel_count

    def to_text(self) -> str:
        return _spec_to_text(self)

    @classmethod
    def from_text(cls, text: str) -> "ConvSpec":
        return _spec_from_text(cls, text)


@dataclass(frozen=True)
class LstmSpec:
    units: int = 32
    layers: int = 1
    dense_hidden: int = 8
    window: int = 4
    initial_lr: float = 0.05
    lr_drop_period: int = 30
    lr_drop_factor: float = 0.1
    batch_size: int = 256
    epochs: int = 100

    def __post_init__(self) -> None:
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise DataValidationError(f"LSTM spec field {f.name} must be positive")
        if self.layers != 1:
            raise DataValidationError("only a single LSTM layer is supported")

    def to_text(self) -> str:
        return _spec_to_text(self)

    @classmethod
    def from_text(cls, text: str) -> "LstmSpec":
        return _spec_from_text(cls, text)


def glorot_uniform(rng: np.random.Generator, shape: tuple[int, ...], fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def init_cnn_params(spec: ConvSpec, rng: np.random.Generator) -> dict[str, np.ndarray]:
    k, f = spec.kernel_size, spec.kernel_count
    flat = spec.flat_units
    return {
        "conv_w": glorot_uniform(rng, (k, 1, f), fan_in=k, fan_out=k * f),
        "conv_b": np.zeros(f),
        "fc1_w": glorot_uniform(rng, (flat, spec.fc1_units), flat, spec.fc1_units),
        "fc1_b": np.zeros(spec.fc1_units),
        "fc2_w": glorot_uniform(rng, (spec.fc1_units, spec.fc2_units), spec.fc1_units, spec.fc2_units),
        "fc2_b": np.zeros(spec.fc2_units),
        "out_w": glorot_uniform(rng, (spec.fc2_units, 1), spec.fc2_units, 1),
        "out_b": np.zeros(1),
    }


def init_lstm_params(spec: LstmSpec, rng: np.random.Generator) -> dict[str, np.ndarray]:
    h = spec.units
    concat = h + 1  # scalar input per step
    params: dict[str, np.ndarray] = {}
    for name in GATE_PARAMS:
        if name.startswith("w"):
            params[name] = glorot_uniform(rng, (h, concat), fan_in=concat, fan_out=h)
        else:
            params[name] = np.zeros(h)
    params["fc_w"] = glorot_uniform(rng, (h, spec.dense_hidden), h, spec.dense_hidden)
    params["fc_b"] = np.zeros(spec.dense_hidden)
    params["out_w"] = glorot_uniform(rng, (spec.dense_hidden, 1), spec.dense_hidden, 1)
    params["out_b"] = np.zeros(1)
    return params


class CnnNetwork:
    """Convolutional regressor over a fixed-length input window."""

    kind = "cnn"

    def __init__(self, spec: ConvSpec | None = None, seed: int = 0, params: dict | None = None):
        self.spec = spec or ConvSpec()
        self.params = params if params is not None else init_cnn_params(
            self.spec, np.random.default_rng(seed)
        )

    def forward_with_cache(self, x: np.ndarray) -> tuple[np.ndarray, dict]:
        p = self.params
        conv_out, conv_cache = conv1d_forward(x, p["conv_w"], p["conv_b"], activation="relu")
        pool_out, pool_cache = avg_pool_forward(conv_out, self.spec.pool_size)
        flat = pool_out.reshape(pool_out.shape[0], -1)
        fc1_out, fc1_cache = dense_forward(flat, p["fc1_w"], p["fc1_b"], activation="relu")
        fc2_out, fc2_cache = dense_forward(fc1_out, p["fc2_w"], p["fc2_b"], activation="relu")
        out, out_cache = dense_forward(fc2_out, p["out_w"], p["out_b"], activation="identity")
        cache = {
            "conv": conv_cache,
            "pool": pool_cache,
            "pool_shape": pool_out.shape,
            "fc1": fc1_cache,
            "fc2": fc2_cache,
            "out": out_cache,
        }
        return out[:, 0], cache

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.forward_with_cache(x)[0]

    def backward(self, cache: dict, grad_pred: np.ndarray) -> dict[str, np.ndarray]:
        grad_out = grad_pred[:, None]
        grad_fc2, out_w_g, out_b_g = dense_backward(grad_out, cache["out"])
        grad_fc1, fc2_w_g, fc2_b_g = dense_backward(grad_fc2, cache["fc2"])
        grad_flat, fc1_w_g, fc1_b_g = dense_backward(grad_fc1, cache["fc1"])
        grad_pool = grad_flat.reshape(cache["pool_shape"])
        grad_conv = avg_pool_backward(grad_pool, cache["pool"])
        _, conv_w_g, conv_b_g = conv1d_backward(grad_conv, cache["conv"])
        return {
            "conv_w": conv_w_g,
            "conv_b": conv_b_g,
            "fc1_w": fc1_w_g,
            "fc1_b": fc1_b_g,
            "fc2_w": fc2_w_g,
            "fc2_b": fc2_b_g,
            "out_w": out_w_g,
            "out_b": out_b_g,
        }


class LstmNetwork:
    """Recurrent regressor: the final hidden state of the unrolled
    window feeds the dense head."""

    kind = "lstm"

    def __init__(self, spec: LstmSpec | None = None, seed: int = 0, params: dict | None = None):
        self.spec = spec or LstmSpec()
        self.params = params if params is not None else init_lstm_params(
            self.spec, np.random.default_rng(seed)
        )

    def forward_with_cache(self, x: np.ndarray) -> tuple[np.ndarray, dict]:
        p = self.params
        h_final, caches = lstm_sequence_forward(x, p, self.spec.units)
        fc_out, fc_cache = dense_forward(h_final, p["fc_w"], p["fc_b"], activation="relu")
        out, out_cache = dense_forward(fc_out, p["out_w"], p["out_b"], activation="identity")
        return out[:, 0], {"lstm": caches, "fc": fc_cache, "out": out_cache}

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.forward_with_cache(x)[0]

    def backward(self, cache: dict, grad_pred: np.ndarray) -> dict[str, np.ndarray]:
        grad_out = grad_pred[:, None]
        grad_fc, out_w_g, out_b_g = dense_backward(grad_out, cache["out"])
        grad_h, fc_w_g, fc_b_g = dense_backward(grad_fc, cache["fc"])
        grads = lstm_sequence_backward(grad_h, cache["lstm"], self.params)
        grads.update({"fc_w": fc_w_g, "fc_b": fc_b_g, "out_w": out_w_g, "out_b": out_b_g})
        return grads
