"""Command-line surface: synth, diagnose, fit, evaluate, compare.

Every command is deterministic given its resolved configuration, which
is echoed as ``# key=value`` header comments into every output file.
Exit codes: 0 success, 1 usage error, 2 data validation error, 3
numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, fields, replace

import numpy as np

from . import nn
from .errors import DataValidationError, NumericalError, UsageError
from .io import load_csv, write_csv
from .mar import MarConfig, MarModel, daylight_values, fit_all_horizons, forecast
from .metrics import (
    ForecastReport,
    report_rows_csv,
    summarize,
    summary_csv,
    summary_table,
)
from .model_io import (
    MAR_MAGIC,
    NN_MAGIC,
    load_mar_model,
    load_nn_models,
    save_mar_model,
    save_nn_models,
)
from .nn.training import loss_curve_csv
from .series import DaylightWindow, IrradianceSeries, fit_scaler, split, standardize
from .stats import autocorrelation, ensemble_deduct, ensemble_profile, pacf_from_autocorrelation, select_order
from .svgplot import render_line_chart
from .synthetic import generate_synthetic

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3

MODELS = ("mar", "ar", "cnn", "lstm")


@dataclass
class RunConfig:
    """Resolved run settings; every field can come from a key=value
    config file and be overridden by a flag."""

    data: str = ""
    split: float = 0.70
    order: str = "4"          # lag count, or "auto" for PACF selection
    horizons: str = "1,3,6"
    daylight: str = "06:00-18:30"
    model: str = "mar"
    seed: int = 0
    out: str = "out"
    mape_threshold: float = 20.0
    recursive: bool = False
    ensemble: bool = True

    def horizon_list(self) -> tuple[int, ...]:
        try:
            horizons = tuple(int(tok) for tok in self.horizons.split(","))
        except ValueError:
            raise UsageError(f"cannot parse horizons {self.horizons!r}") from None
        if not horizons or any(h < 1 for h in horizons):
            raise UsageError(f"horizons must be positive step counts, got {self.horizons!r}")
        return horizons

    def order_value(self) -> int | None:
        if self.order == "auto":
            return None
        try:
            order = int(self.order)
        except ValueError:
            raise UsageError(f"order must be an integer or 'auto', got {self.order!r}") from None
        if order < 1:
            raise UsageError(f"order must be >= 1, got {order}")
        return order

    def daylight_window(self) -> DaylightWindow:
        return DaylightWindow.parse(self.daylight)

    def header_items(self) -> dict[str, object]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _coerce(name: str, raw: str, current) -> object:
    if isinstance(current, bool):
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise UsageError(f"config key {name}: cannot parse boolean {raw!r}")
    if isinstance(current, int):
        return int(raw)
    if isinstance(current, float):
        return float(raw)
    return raw


def load_config_file(path: str) -> RunConfig:
    config = RunConfig()
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except FileNotFoundError:
        raise UsageError(f"config file not found: {path}") from None
    known = {f.name for f in fields(RunConfig)}
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in known:
            raise UsageError(f"{path} line {lineno}: unknown config entry {stripped!r}")
        try:
            config = replace(config, **{key: _coerce(key, value, getattr(config, key))})
        except ValueError as exc:
            raise UsageError(f"{path} line {lineno}: {exc}") from None
    return config


def resolve_config(args: argparse.Namespace) -> RunConfig:
    config = load_config_file(args.config) if getattr(args, "config", None) else RunConfig()
    overrides = {
        "data": args.data if getattr(args, "data", None) is not None else None,
        "split": getattr(args, "split", None),
        "order": getattr(args, "order", None),
        "horizons": getattr(args, "horizons", None),
        "daylight": getattr(args, "daylight", None),
        "model": getattr(args, "model", None),
        "seed": getattr(args, "seed", None),
        "out": getattr(args, "out", None),
        "mape_threshold": getattr(args, "mape_threshold", None),
    }
    for key, value in overrides.items():
        if value is not None:
            config = replace(config, **{key: value})
    if getattr(args, "recursive", False):
        config = replace(config, recursive=True)
    if getattr(args, "no_ensemble", False):
        config = replace(config, ensemble=False)
    if config.model not in MODELS:
        raise UsageError(f"unknown model {config.model!r}, expected one of {MODELS}")
    if config.model == "ar":
        config = replace(config, ensemble=False)
    return config


def _header_lines(config: RunConfig, command: str) -> dict[str, object]:
    items: dict[str, object] = {"command": command}
    items.update(config.header_items())
    return items


def _write_text(path: str, header: dict[str, object], body: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in header.items():
            fh.write(f"# {key}={value}\n")
        fh.write(body)


def _ensure_out(config: RunConfig) -> str:
    os.makedirs(config.out, exist_ok=True)
    return config.out


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage problems; this tool reserves 2 for
    data validation, so remap to 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value config file; flags override it")
    parser.add_argument("--data", help="input CSV path")
    parser.add_argument("--split", type=float, help="training fraction (default 0.70)")
    parser.add_argument("--order", help="lag count or 'auto'")
    parser.add_argument("--horizons", help="comma-separated step counts (default 1,3,6)")
    parser.add_argument("--daylight", help="daylight window HH:MM-HH:MM")
    parser.add_argument("--seed", type=int, help="random seed")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--mape-threshold", dest="mape_threshold", type=float,
                        help="minimum actual W/m2 for MAPE rows")
    parser.add_argument("--recursive", action="store_true",
                        help="iterate the 1-step model instead of direct per-horizon weights")
    parser.add_argument("--no-ensemble", dest="no_ensemble", action="store_true",
                        help="disable ensemble deduction (plain AR pipeline)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="solarcast", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_synth = sub.add_parser("synth", help="generate a synthetic irradiance CSV")
    p_synth.add_argument("--days", type=int, required=True)
    p_synth.add_argument("--regime", choices=("clear", "cloudy", "mixed"), default="mixed")
    _add_common(p_synth)

    p_diag = sub.add_parser("diagnose", help="ACF/PACF diagnostics and order recommendation")
    p_diag.add_argument("--max-lag", dest="max_lag", type=int, default=24)
    p_diag.add_argument("--domain", choices=("ens", "z"), default="ens",
                        help="correlate ensemble-deducted (default) or standardized data")
    _add_common(p_diag)

    p_fit = sub.add_parser("fit", help="fit a model and persist it")
    p_fit.add_argument("--model", help=f"one of {', '.join(MODELS)}")
    _add_common(p_fit)

    p_eval = sub.add_parser("evaluate", help="forecast the test split with a saved model")
    p_eval.add_argument("--model-file", dest="model_file", required=True)
    _add_common(p_eval)

    p_cmp = sub.add_parser("compare", help="fit and evaluate all four models on one split")
    _add_common(p_cmp)

    return parser


def _require_data(config: RunConfig) -> IrradianceSeries:
    if not config.data:
        raise UsageError("--data is required for this command")
    return load_csv(config.data)


def cmd_synth(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    if args.days < 1:
        raise UsageError(f"--days must be >= 1, got {args.days}")
    out_dir = _ensure_out(config)
    series = generate_synthetic(days=args.days, regime=args.regime, seed=config.seed)
    path = config.data or os.path.join(out_dir, f"synthetic_{args.regime}_{args.days}d.csv")
    header = _header_lines(config, "synth")
    header["days"] = args.days
    header["regime"] = args.regime
    write_csv(series, path, header_comments=header)
    print(path)
    return EXIT_OK


def cmd_diagnose(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    series = _require_data(config)
    daylight = config.daylight_window()
    train, _ = split(series, config.split)
    scaler = fit_scaler(train)
    z = standardize(train, scaler)
    if args.domain == "ens":
        domain_series = ensemble_deduct(z, ensemble_profile(z))
    else:
        domain_series = z
    values = daylight_values(domain_series, daylight)
    acf = autocorrelation(values, args.max_lag)
    pacf = pacf_from_autocorrelation(acf)
    order = select_order(pacf)

    out_dir = _ensure_out(config)
    body_lines = ["lag,acf,pacf"]
    for lag in range(args.max_lag + 1):
        body_lines.append(f"{lag},{acf.values[lag]:.10g},{pacf.values[lag]:.10g}")
    path = os.path.join(out_dir, "diagnostics.csv")
    header = _header_lines(config, "diagnose")
    header["max_lag"] = args.max_lag
    header["domain"] = args.domain
    _write_text(path, header, "\n".join(body_lines) + "\n")
    print(f"recommended order: {order}")
    print(path)
    return EXIT_OK


def _fit_mar(train: IrradianceSeries, config: RunConfig) -> MarModel:
    mar_config = MarConfig(
        order=config.order_value(),
        horizons=config.horizon_list(),
        daylight=config.daylight_window(),
        ensemble_enabled=config.ensemble,
    )
    return fit_all_horizons(train, mar_config)


def _fit_nn(train: IrradianceSeries, config: RunConfig, kind: str) -> list[nn.NeuralModel]:
    daylight = config.daylight_window()
    models = []
    for h in config.horizon_list():
        if kind == "cnn":
            models.append(nn.train_cnn(train, horizon=h, daylight=daylight, seed=config.seed))
        else:
            models.append(nn.train_lstm(train, horizon=h, daylight=daylight, seed=config.seed))
    return models


def cmd_fit(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    series = _require_data(config)
    train, _ = split(series, config.split)
    out_dir = _ensure_out(config)
    path = os.path.join(out_dir, f"{config.model}.model")
    if config.model in ("mar", "ar"):
        model = _fit_mar(train, config)
        save_mar_model(model, path)
    else:
        models = _fit_nn(train, config, config.model)
        save_nn_models(models, path)
        for m in models:
            curve_path = os.path.join(out_dir, f"{config.model}_h{m.horizon}_loss.csv")
            _write_text(curve_path, _header_lines(config, "fit"), loss_curve_csv(m))
    print(path)
    return EXIT_OK


def _detect_model_kind(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            first = fh.readline().strip()
    except FileNotFoundError:
        raise DataValidationError(f"model file not found: {path}") from None
    if first == MAR_MAGIC:
        return "mar"
    if first == NN_MAGIC:
        return "nn"
    raise DataValidationError(f"{path}: not a recognized model file (first line {first!r})")


def _evaluate_model_file(
    model_file: str, test: IrradianceSeries, config: RunConfig
) -> list[ForecastReport]:
    reports: list[ForecastReport] = []
    if _detect_model_kind(model_file) == "mar":
        model = load_mar_model(model_file)
        for h in config.horizon_list():
            if not config.recursive and h not in model.weights:
                raise UsageError(f"model file has no weights for horizon {h}")
            reports.append(forecast(model, test, h, recursive=config.recursive))
    else:
        if config.recursive:
            raise UsageError("recursive mode applies to mar/ar models only")
        models = load_nn_models(model_file)
        for h in config.horizon_list():
            if h not in models:
                raise UsageError(f"model file has no network for horizon {h}")
            reports.append(nn.nn_forecast(models[h], test))
    return reports


def _write_reports(
    reports: list[ForecastReport],
    config: RunConfig,
    command: str,
    out_dir: str,
    step: int,
    prefix: str = "",
) -> None:
    header = _header_lines(config, command)
    _write_text(
        os.path.join(out_dir, f"{prefix}forecasts.csv"), header, report_rows_csv(reports)
    )
    cells = summarize(reports, min_actual=config.mape_threshold)
    _write_text(os.path.join(out_dir, f"{prefix}summary.csv"), header, summary_csv(cells))
    print(summary_table(cells, step=step), end="")


def cmd_evaluate(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    series = _require_data(config)
    _, test = split(series, config.split)
    out_dir = _ensure_out(config)
    reports = _evaluate_model_file(args.model_file, test, config)
    _write_reports(reports, config, "evaluate", out_dir, step=test.step)
    return EXIT_OK


def _overlay_charts(
    reports: list[ForecastReport],
    test: IrradianceSeries,
    config: RunConfig,
    out_dir: str,
) -> None:
    """One SVG per horizon: the first test day's observed curve with
    every model's predictions overlaid."""
    by_horizon: dict[int, list[ForecastReport]] = {}
    for report in reports:
        by_horizon.setdefault(report.horizon, []).append(report)
    day_start = test.start
    day_end = day_start.replace(hour=23, minute=59)
    header = _header_lines(config, "compare")
    comment = " ".join(f"{k}={v}" for k, v in header.items())
    for horizon, horizon_reports in sorted(by_horizon.items()):
        curves = []
        first = horizon_reports[0]
        day_mask = [day_start <= ts <= day_end for ts in first.timestamps]
        hours = np.array(
            [ts.hour + ts.minute / 60.0 for ts, keep in zip(first.timestamps, day_mask) if keep]
        )
        curves.append(("observed", hours, first.actual[np.array(day_mask)]))
        for report in horizon_reports:
            mask = np.array([day_start <= ts <= day_end for ts in report.timestamps])
            curves.append((report.model, hours, report.predicted[mask]))
        minutes = horizon * test.step
        title = f"Observed vs predicted, {minutes}-minute horizon, {day_start.date()}"
        path = os.path.join(out_dir, f"overlay_h{horizon}.svg")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(
                render_line_chart(
                    curves,
                    title=title,
                    x_label="hour of day",
                    y_label="irradiance W/m2",
                    comment=comment,
                )
            )


def cmd_compare(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    series = _require_data(config)
    train, test = split(series, config.split)
    out_dir = _ensure_out(config)

    reports: list[ForecastReport] = []
    mar_model = _fit_mar(train, replace(config, ensemble=True))
    ar_model = _fit_mar(train, replace(config, ensemble=False))
    for h in config.horizon_list():
        reports.append(forecast(mar_model, test, h, label="mar"))
        reports.append(forecast(ar_model, test, h, label="ar"))
    for kind in ("cnn", "lstm"):
        for model in _fit_nn(train, config, kind):
            reports.append(nn.nn_forecast(model, test))

    _write_reports(reports, config, "compare", out_dir, step=test.step, prefix="compare_")
    _overlay_charts(reports, test, config, out_dir)
    return EXIT_OK


COMMANDS = {
    "synth": cmd_synth,
    "diagnose": cmd_diagnose,
    "fit": cmd_fit,
    "evaluate": cmd_evaluate,
    "compare": cmd_compare,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.cmd](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataValidationError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
