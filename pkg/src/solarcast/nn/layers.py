"""Feed-forward layer primitives with analytic gradients.

Every forward returns (output, cache); the matching backward consumes
the upstream gradient and the cache and returns gradients for the
input and each parameter. Shapes follow the (batch, length, channels)
convention for sequence tensors and (batch, features) for dense ones.
"""

from __future__ import annotations

import numpy as np

from ..errors import DataValidationError

ACTIVATIONS = ("identity", "relu")


def relu(x: np.ndarray) -> np.ndarray:
    """Elementwise max(0, x)."""
    return np.maximum(x, 0.0)


def _activate(pre: np.ndarray, activation: str) -> np.ndarray:
    if activation == "identity":
        return pre
    if activation == "relu":
        return relu(pre)
    raise DataValidationError(f"unknown activation {activation!r}, expected one of {ACTIVATIONS}")


def _activation_grad(grad_out: np.ndarray, pre: np.ndarray, activation: str) -> np.ndarray:
    if activation == "identity":
        return grad_out
    # relu passes gradient only where the pre-activation was positive
    return grad_out * (pre > 0.0)


def conv1d_forward(
    x: np.ndarray, weights: np.ndarray, bias: np.ndarray, activation: str = "relu"
) -> tuple[np.ndarray, dict]:
    """Valid (no padding) 1-D cross-correlation.

    x: (batch, length, in_channels); weights: (kernel, in_channels,
    out_channels); bias: (out_channels,). Output length is
    length - kernel + 1.
    """
    x = np.asarray(x, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    bias = np.asarray(bias, dtype=np.float64)
    if x.ndim != 3 or weights.ndim != 3:
        raise DataValidationError("conv1d expects rank-3 input and weights")
    batch, length, in_ch = x.shape
    kernel, w_in, out_ch = weights.shape
    if w_in != in_ch or bias.shape != (out_ch,):
        raise DataValidationError(
            f"conv1d shape mismatch: input channels {in_ch}, weights {weights.shape}, "
            f"bias {bias.shape}"
        )
    if kernel > length:
        raise DataValidationError(f"kernel size {kernel} exceeds input length {length}")
    out_len = length - kernel + 1
    pre = np.broadcast_to(bias, (batch, out_len, out_ch)).copy()
    for j in range(kernel):
        pre += x[:, j : j + out_len, :] @ weights[j]
    out = _activate(pre, activation)
    cache = {"x": x, "weights": weights, "pre": pre, "activation": activation}
    return out, cache


def conv1d_backward(grad_out: np.ndarray, cache: dict) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns (grad_x, grad_weights, grad_bias)."""
    x, weights = cache["x"], cache["weights"]
    grad_pre = _activation_grad(grad_out, cache["pre"], cache["activation"])
    kernel = weights.shape[0]
    out_len = grad_pre.shape[1]
    grad_x = np.zeros_like(x)
    grad_w = np.zeros_like(weights)
    for j in range(kernel):
        grad_w[j] = np.einsum("blc,blo->co", x[:, j : j + out_len, :], grad_pre)
        grad_x[:, j : j + out_len, :] += grad_pre @ weights[j].T
    grad_b = grad_pre.sum(axis=(0, 1))
    return grad_x, grad_w, grad_b


def avg_pool_forward(x: np.ndarray, size: int) -> tuple[np.ndarray, dict]:
    """Non-overlapping window means along the length axis; size 1 is
    the identity."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 3:
        raise DataValidationError("avg_pool expects a rank-3 input")
    if size < 1:
        raise DataValidationError(f"pool size must be >= 1, got {size}")
    batch, length, channels = x.shape
    if length % size != 0:
        raise DataValidationError(f"input length {length} is not divisible by pool size {size}")
    out = x.reshape(batch, length // size, size, channels).mean(axis=2)
    return out, {"size": size, "shape": x.shape}


def avg_pool_backward(grad_out: np.ndarray, cache: dict) -> np.ndarray:
    size = cache["size"]
    batch, length, channels = cache["shape"]
    # each input in a window receives an equal 1/size share
    spread = np.repeat(grad_out, size, axis=1) / size
    return spread.reshape(batch, length, channels)


def dense_forward(
    x: np.ndarray, weights: np.ndarray, bias: np.ndarray, activation: str = "identity"
) -> tuple[np.ndarray, dict]:
    """Affine map plus activation. x: (batch, n_in); weights:
    (n_in, n_out); bias: (n_out,)."""
    x = np.asarray(x, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    bias = np.asarray(bias, dtype=np.float64)
    if x.ndim != 2 or weights.ndim != 2 or x.shape[1] != weights.shape[0]:
        raise DataValidationError(
            f"dense shape mismatch: input {x.shape} vs weights {weights.shape}"
        )
    if bias.shape != (weights.shape[1],):
        raise DataValidationError(f"dense bias shape {bias.shape} mismatches {weights.shape}")
    pre = x @ weights + bias
    out = _activate(pre, activation)
    return out, {"x": x, "weights": weights, "pre": pre, "activation": activation}


def dense_backward(grad_out: np.ndarray, cache: dict) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns (grad_x, grad_weights, grad_bias)."""
    grad_pre = _activation_grad(grad_out, cache["pre"], cache["activation"])
    grad_x = grad_pre @ cache["weights"].T
    grad_w = cache["x"].T @ grad_pre
    grad_b = grad_pre.sum(axis=0)
    return grad_x, grad_w, grad_b
