"""Finite-difference verification of analytic gradients."""

from __future__ import annotations

from typing import Callable

import numpy as np

DEFAULT_STEP = 1e-5


def finite_difference_gradients(
    loss_fn: Callable[[], float],
    params: dict[str, np.ndarray],
    step: float = DEFAULT_STEP,
) -> dict[str, np.ndarray]:
    """Central-difference gradient of ``loss_fn`` with respect to every
    element of every parameter. ``loss_fn`` must read the same array
    objects held in ``params``; elements are perturbed in place and
    restored."""
    grads: dict[str, np.ndarray] = {}
    for name, arr in params.items():
        grad = np.zeros_like(arr)
        flat = arr.reshape(-1)
        grad_flat = grad.reshape(-1)
        for idx in range(flat.size):
            original = flat[idx]
            flat[idx] = original + step
            upper = loss_fn()
            flat[idx] = original - step
            lower = loss_fn()
            flat[idx] = original
            grad_flat[idx] = (upper - lower) / (2.0 * step)
        grads[name] = grad
    return grads


def max_relative_error(
    analytic: dict[str, np.ndarray],
    numeric: dict[str, np.ndarray],
    floor: float = 1e-6,
) -> float:
    """Largest relative disagreement over elements whose analytic
    gradient magnitude exceeds ``floor``; smaller elements are skipped
    (their relative error is dominated by differencing noise)."""
    worst = 0.0
    for name, a in analytic.items():
        n = numeric[name]
        mask = np.abs(a) > floor
        if np.any(mask):
            rel = np.abs(a[mask] - n[mask]) / np.abs(a[mask])
            worst = max(worst, float(rel.max()))
    return worst
