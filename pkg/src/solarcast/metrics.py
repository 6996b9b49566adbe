"""Forecast error metrics and the model x horizon comparison table."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime

import numpy as np

from .errors import DataValidationError

DEFAULT_MAPE_THRESHOLD = 20.0

# Canonical column order for comparison tables.
MODEL_ORDER = ("cnn", "ar", "lstm", "mar")


def _pair_arrays(actual, predicted) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(actual, dtype=np.float64)
    p = np.asarray(predicted, dtype=np.float64)
    if a.shape != p.shape or a.ndim != 1:
        raise DataValidationError(
            f"actual and predicted must be 1-D and aligned, got {a.shape} vs {p.shape}"
        )
    if a.size == 0:
        raise DataValidationError("metrics need at least one (actual, predicted) pair")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(p))):
        raise DataValidationError("metrics need finite inputs")
    return a, p


def rmse(actual, predicted) -> float:
    """Root mean square error, W/m2."""
    a, p = _pair_arrays(actual, predicted)
    return float(np.sqrt(np.mean((a - p) ** 2)))


def mae(actual, predicted) -> float:
    """Mean absolute error, W/m2."""
    a, p = _pair_arrays(actual, predicted)
    return float(np.mean(np.abs(a - p)))


def mape(actual, predicted, min_actual: float = DEFAULT_MAPE_THRESHOLD) -> float:
    """Mean absolute percentage error over pairs whose actual value is
    at least ``min_actual`` W/m2. Near-zero actuals (night, dawn, dusk)
    would otherwise blow the percentage up."""
    a, p = _pair_arrays(actual, predicted)
    keep = a >= min_actual
    if not np.any(keep):
        raise DataValidationError(
            f"no pairs with actual >= {min_actual} W/m2; cannot compute MAPE"
        )
    return float(100.0 * np.mean(np.abs(a[keep] - p[keep]) / a[keep]))


@dataclass
class ForecastReport:
    """Predicted/actual pairs for one model at one horizon."""

    model: str
    horizon: int
    timestamps: list[datetime]
    actual: np.ndarray
    predicted: np.ndarray

    def __post_init__(self) -> None:
        self.actual = np.asarray(self.actual, dtype=np.float64)
        self.predicted = np.asarray(self.predicted, dtype=np.float64)
        if not (len(self.timestamps) == self.actual.size == self.predicted.size):
            raise DataValidationError("report rows must align timestamps, actuals, predictions")

    def __len__(self) -> int:
        return self.actual.size

    def summary(self, min_actual: float = DEFAULT_MAPE_THRESHOLD) -> "SummaryCell":
        return SummaryCell(
            model=self.model,
            horizon=self.horizon,
            rmse=rmse(self.actual, self.predicted),
            mae=mae(self.actual, self.predicted),
            mape=mape(self.actual, self.predicted, min_actual=min_actual),
        )


@dataclass(frozen=True)
class SummaryCell:
    model: str
    horizon: int
    rmse: float
    mae: float
    mape: float


def summarize(
    reports: list[ForecastReport], min_actual: float = DEFAULT_MAPE_THRESHOLD
) -> list[SummaryCell]:
    """One summary cell per (model, horizon), in stable comparison order."""
    cells = [report.summary(min_actual=min_actual) for report in reports]

    def sort_key(cell: SummaryCell):
        try:
            rank = MODEL_ORDER.index(cell.model)
        except ValueError:
            rank = len(MODEL_ORDER)
        return (cell.horizon, rank, cell.model)

    return sorted(cells, key=sort_key)


def horizon_label(horizon: int, step: int) -> str:
    minutes = horizon * step
    if minutes % 60 == 0:
        hours = minutes // 60
        return f"{hours} h"
    return f"{minutes} min"


def summary_csv(cells: list[SummaryCell]) -> str:
    lines = ["model,horizon,rmse,mae,mape"]
    for c in cells:
        lines.append(f"{c.model},{c.horizon},{c.rmse:.6f},{c.mae:.6f},{c.mape:.6f}")
    return "\n".join(lines) + "\n"


def summary_table(cells: list[SummaryCell], step: int = 10) -> str:
    """Aligned text table: one row per metric and horizon, one column
    per model."""
    models = [m for m in MODEL_ORDER if any(c.model == m for c in cells)]
    models += sorted({c.model for c in cells} - set(models))
    horizons = sorted({c.horizon for c in cells})
    by_key = {(c.model, c.horizon): c for c in cells}

    metric_rows = [
        ("RMSE /W/m2", lambda c: c.rmse),
        ("MAE /W/m2", lambda c: c.mae),
        ("MAPE /%", lambda c: c.mape),
    ]
    header = f"{'Error':<12}{'Horizon':<10}" + "".join(f"{m.upper():>10}" for m in models)
    lines = [header, "-" * len(header)]
    for label, getter in metric_rows:
        for i, h in enumerate(horizons):
            row = f"{label if i == 0 else '':<12}{horizon_label(h, step):<10}"
            for m in models:
                cell = by_key.get((m, h))
                row += f"{getter(cell):>10.2f}" if cell is not None else f"{'-':>10}"
            lines.append(row)
    return "\n".join(lines) + "\n"


def report_rows_csv(reports: list[ForecastReport]) -> str:
    lines = ["timestamp,model,horizon,actual_wm2,predicted_wm2"]
    for report in reports:
        for ts, a, p in zip(report.timestamps, report.actual, report.predicted):
            lines.append(f"{ts.isoformat()},{report.model},{report.horizon},{a:.17g},{p:.17g}")
    return "\n".join(lines) + "\n"
