"""LSTM cell and backpropagation through time.

Gate parameters act on the concatenation [h_prev, x_t]:

    f = sigmoid(w_f [h, x] + b_f)      forget gate
    i = sigmoid(w_i [h, x] + b_i)      input gate
    o = sigmoid(w_o [h, x] + b_o)      output gate
    cand = tanh(w_c [h, x] + b_c)      candidate cell state
    c = f * c_prev + i * cand
    h = o * tanh(c)

Weight matrices have shape (hidden, hidden + input); the sequence
helpers unroll the cell over a window and accumulate parameter
gradients across all steps.
"""

from __future__ import annotations

import numpy as np

from ..errors import DataValidationError

GATE_PARAMS = ("w_f", "w_i", "w_o", "w_c", "b_f", "b_i", "b_o", "b_c")


def sigmoid(x: np.ndarray) -> np.ndarray:
    # split by sign to stay overflow-free for large |x|
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _check_params(params: dict, hidden: int, n_in: int) -> None:
    for name in GATE_PARAMS:
        if name not in params:
            raise DataValidationError(f"missing LSTM parameter {name!r}")
        expected = (hidden, hidden + n_in) if name.startswith("w") else (hidden,)
        if params[name].shape != expected:
            raise DataValidationError(
                f"LSTM parameter {name} has shape {params[name].shape}, expected {expected}"
            )


def lstm_cell_forward(
    x_t: np.ndarray, h_prev: np.ndarray, c_prev: np.ndarray, params: dict
) -> tuple[np.ndarray, np.ndarray, dict]:
    """One step. x_t: (batch, n_in); h_prev, c_prev: (batch, hidden).
    Returns (h_t, c_t, cache)."""
    x_t = np.asarray(x_t, dtype=np.float64)
    h_prev = np.asarray(h_prev, dtype=np.float64)
    c_prev = np.asarray(c_prev, dtype=np.float64)
    if x_t.ndim != 2 or h_prev.ndim != 2 or c_prev.shape != h_prev.shape:
        raise DataValidationError("lstm cell expects (batch, n_in) input and matching states")
    hidden = h_prev.shape[1]
    _check_params(params, hidden, x_t.shape[1])

    concat = np.concatenate([h_prev, x_t], axis=1)
    f = sigmoid(concat @ params["w_f"].T + params["b_f"])
    i = sigmoid(concat @ params["w_i"].T + params["b_i"])
    o = sigmoid(concat @ params["w_o"].T + params["b_o"])
    cand = np.tanh(concat @ params["w_c"].T + params["b_c"])
    c_t = f * c_prev + i * cand
    tanh_c = np.tanh(c_t)
    h_t = o * tanh_c
    cache = {
        "concat": concat,
        "f": f,
        "i": i,
        "o": o,
        "cand": cand,
        "c_prev": c_prev,
        "tanh_c": tanh_c,
        "hidden": hidden,
    }
    return h_t, c_t, cache


def lstm_cell_backward(
    grad_h: np.ndarray, grad_c: np.ndarray, cache: dict, params: dict
) -> tuple[np.ndarray, np.ndarray, np.ndarray, dict]:
    """Backward through one step.

    grad_h / grad_c are the loss gradients flowing into h_t and c_t.
    Returns (grad_x, grad_h_prev, grad_c_prev, param_grads).
    """
    f, i, o, cand = cache["f"], cache["i"], cache["o"], cache["cand"]
    tanh_c, concat, hidden = cache["tanh_c"], cache["concat"], cache["hidden"]

    grad_o = grad_h * tanh_c
    grad_c_total = grad_c + grad_h * o * (1.0 - tanh_c**2)
    grad_f = grad_c_total * cache["c_prev"]
    grad_i = grad_c_total * cand
    grad_cand = grad_c_total * i
    grad_c_prev = grad_c_total * f

    # through the gate nonlinearities
    d_f = grad_f * f * (1.0 - f)
    d_i = grad_i * i * (1.0 - i)
    d_o = grad_o * o * (1.0 - o)
    d_cand = grad_cand * (1.0 - cand**2)

    grads = {
        "w_f": d_f.T @ concat,
        "w_i": d_i.T @ concat,
        "w_o": d_o.T @ concat,
        "w_c": d_cand.T @ concat,
        "b_f": d_f.sum(axis=0),
        "b_i": d_i.sum(axis=0),
        "b_o": d_o.sum(axis=0),
        "b_c": d_cand.sum(axis=0),
    }
    grad_concat = d_f @ params["w_f"] + d_i @ params["w_i"] + d_o @ params["w_o"] + d_cand @ params["w_c"]
    grad_h_prev = grad_concat[:, :hidden]
    grad_x = grad_concat[:, hidden:]
    return grad_x, grad_h_prev, grad_c_prev, grads


def lstm_sequence_forward(
    x_seq: np.ndarray, params: dict, hidden: int
) -> tuple[np.ndarray, list[dict]]:
    """Unroll over x_seq of shape (batch, steps, n_in) from zero
    initial states; returns the final hidden state and per-step caches."""
    x_seq = np.asarray(x_seq, dtype=np.float64)
    if x_seq.ndim != 3:
        raise DataValidationError("lstm sequence expects (batch, steps, n_in)")
    batch = x_seq.shape[0]
    h = np.zeros((batch, hidden))
    c = np.zeros((batch, hidden))
    caches: list[dict] = []
    for t in range(x_seq.shape[1]):
        h, c, cache = lstm_cell_forward(x_seq[:, t, :], h, c, params)
        caches.append(cache)
    return h, caches


def lstm_sequence_backward(
    grad_h_final: np.ndarray, caches: list[dict], params: dict
) -> dict:
    """Backpropagate through time from the final hidden state,
    accumulating parameter gradients over all steps."""
    if not caches:
        raise DataValidationError("no forward caches to backpropagate through")
    grads = {name: np.zeros_like(params[name]) for name in GATE_PARAMS}
    grad_h = grad_h_final
    grad_c = np.zeros_like(grad_h_final)
    for cache in reversed(caches):
        _, grad_h, grad_c, step_grads = lstm_cell_backward(grad_h, grad_c, cache, params)
        for name in GATE_PARAMS:
            grads[name] += step_grads[name]
    return grads
