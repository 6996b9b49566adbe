"""Reading and writing the canonical irradiance CSV.

Schema: UTF-8, LF line endings, header ``timestamp,irradiance_wm2``,
one row per sampling slot with an ISO-8601 timestamp. Lines starting
with ``#`` are metadata comments (tools in this package write their
resolved configuration there) and are skipped on load.
"""

from __future__ import annotations

import os
from datetime import datetime, timedelta

import numpy as np

from .errors import DataValidationError
from .series import IrradianceSeries

CSV_HEADER = "timestamp,irradiance_wm2"


def load_csv(path: str | os.PathLike) -> IrradianceSeries:
    """Load and validate a series from the canonical CSV schema.

    Rejects missing files, malformed rows (reported with their line
    number), duplicate or missing sampling slots, and negative
    irradiance values.
    """
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        raise DataValidationError(f"input file not found: {path}") from None

    timestamps: list[datetime] = []
    values: list[float] = []
    header_seen = False
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not header_seen:
            if stripped != CSV_HEADER:
                raise DataValidationError(
                    f"line {lineno}: expected header {CSV_HEADER!r}, got {stripped!r}"
                )
            header_seen = True
            continue
        parts = stripped.split(",")
        if len(parts) != 2:
            raise DataValidationError(
                f"line {lineno}: expected two comma-separated fields, got {len(parts)}"
            )
        try:
            ts = datetime.fromisoformat(parts[0])
        except ValueError:
            raise DataValidationError(
                f"line {lineno}: malformed ISO-8601 timestamp {parts[0]!r}"
            ) from None
        try:
            value = float(parts[1])
        except ValueError:
            raise DataValidationError(
                f"line {lineno}: malformed irradiance value {parts[1]!r}"
            ) from None
        if not np.isfinite(value):
            raise DataValidationError(f"line {lineno}: non-finite irradiance value")
        if value < 0:
            raise DataValidationError(
                f"line {lineno}: negative irradiance {value} at {ts.isoformat()}"
            )
        timestamps.append(ts)
        values.append(value)

    if not header_seen:
        raise DataValidationError(f"{path}: no header line found")
    if len(values) < 2:
        raise DataValidationError(f"{path}: need at least two data rows")

    step_delta = timestamps[1] - timestamps[0]
    step_minutes = step_delta.total_seconds() / 60.0
    if step_minutes <= 0 or step_minutes != int(step_minutes):
        raise DataValidationError(
            f"first two rows imply a non-positive or fractional step of {step_minutes} minutes"
        )
    step = int(step_minutes)
    for i in range(1, len(timestamps)):
        gap = timestamps[i] - timestamps[i - 1]
        if gap == step_delta:
            continue
        if gap == timedelta(0):
            raise DataValidationError(
                f"duplicate timestamp {timestamps[i].isoformat()}"
            )
        expected = timestamps[i - 1] + step_delta
        raise DataValidationError(
            f"irregular spacing: expected sample at {expected.isoformat()}, "
            f"found {timestamps[i].isoformat()}"
        )

    return IrradianceSeries(start=timestamps[0], values=np.array(values), step=step)


def write_csv(
    series: IrradianceSeries,
    path: str | os.PathLike,
    header_comments: dict[str, object] | None = None,
) -> None:
    """Write a series in the canonical schema, with optional
    ``# key=value`` metadata lines before the header."""
    chunks: list[str] = []
    for key, value in (header_comments or {}).items():
        chunks.append(f"# {key}={value}\n")
    chunks.append(CSV_HEADER + "\n")
    ts = series.start
    delta = timedelta(minutes=series.step)
    for value in series.values:
        chunks.append(f"{ts.isoformat()},{value:.17g}\n")
        ts = ts + delta
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("".join(chunks))
