"""Dependency-free SVG line charts for observed-vs-predicted overlays."""

from __future__ import annotations

import os
from xml.sax.saxutils import escape

import numpy as np

from .errors import DataValidationError

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

MARGIN_LEFT = 64
MARGIN_RIGHT = 16
MARGIN_TOP = 34
MARGIN_BOTTOM = 46


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10.0 ** np.floor(np.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = np.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * step:
        ticks.append(float(v))
        v += step
    return ticks


def render_line_chart(
    curves: list[tuple[str, np.ndarray, np.ndarray]],
    title: str = "",
    x_label: str = "",
    y_label: str = "",
    width: int = 880,
    height: int = 420,
    comment: str | None = None,
) -> str:
    """Render labelled (x, y) curves into an SVG document string."""
    if not curves:
        raise DataValidationError("nothing to plot")
    xs = np.concatenate([np.asarray(x, dtype=np.float64) for _, x, _ in curves])
    ys = np.concatenate([np.asarray(y, dtype=np.float64) for _, _, y in curves])
    if xs.size == 0:
        raise DataValidationError("curves are empty")
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo, y_hi = min(0.0, float(ys.min())), float(ys.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    plot_w = width - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = height - MARGIN_TOP - MARGIN_BOTTOM

    def px(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return MARGIN_TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    if comment:
        parts.append(f"<!-- {escape(comment)} -->")
    parts.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>')
    if title:
        parts.append(
            f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{escape(title)}</text>'
        )

    # gridlines and tick labels
    for tx in _ticks(x_lo, x_hi):
        parts.append(
            f'<line x1="{px(tx):.1f}" y1="{MARGIN_TOP}" x2="{px(tx):.1f}" '
            f'y2="{MARGIN_TOP + plot_h}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{px(tx):.1f}" y="{MARGIN_TOP + plot_h + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{tx:g}</text>'
        )
    for ty in _ticks(y_lo, y_hi):
        parts.append(
            f'<line x1="{MARGIN_LEFT}" y1="{py(ty):.1f}" x2="{MARGIN_LEFT + plot_w}" '
            f'y2="{py(ty):.1f}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT - 6}" y="{py(ty) + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{ty:g}</text>'
        )
    parts.append(
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#444444" stroke-width="1"/>'
    )
    if x_label:
        parts.append(
            f'<text x="{MARGIN_LEFT + plot_w / 2:.1f}" y="{height - 10}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{escape(x_label)}</text>'
        )
    if y_label:
        cy = MARGIN_TOP + plot_h / 2
        parts.append(
            f'<text x="16" y="{cy:.1f}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="12" transform="rotate(-90 16 {cy:.1f})">{escape(y_label)}</text>'
        )

    for idx, (label, x, y) in enumerate(curves):
        color = PALETTE[idx % len(PALETTE)]
        pts = " ".join(
            f"{px(float(xi)):.2f},{py(float(yi)):.2f}" for xi, yi in zip(x, y)
        )
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.6"/>'
        )
        # legend swatch + label, top-left inside the plot area
        ly = MARGIN_TOP + 16 + idx * 16
        parts.append(
            f'<line x1="{MARGIN_LEFT + 10}" y1="{ly}" x2="{MARGIN_LEFT + 34}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT + 40}" y="{ly + 4}" font-family="sans-serif" '
            f'font-size="11">{escape(label)}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_line_chart(path: str | os.PathLike, *args, **kwargs) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_line_chart(*args, **kwargs))
