"""Design matrix construction, least-squares fitting, forecasting."""

import numpy as np
import pytest

from solarcast import (
    DataValidationError,
    DaylightWindow,
    MarConfig,
    NumericalError,
    UsageError,
    build_design_matrix,
    destandardize,
    fit_all_horizons,
    fit_weights,
    forecast,
    generate_synthetic,
    mape,
    predict_step,
    rmse,
    split,
)
from solarcast.mar import DesignMatrix, MarModel
from solarcast.series import Scaler
from solarcast.stats import EnsembleProfile

from conftest import FULL_DAY_WINDOW, make_series, sinusoid_recurrence


class TestBuildDesignMatrix:
    def test_row_count_75_slot_window(self):
        # 06:00-18:20 spans 75 slots on the 10-minute grid
        window = DaylightWindow(360, 1100)
        series = make_series(np.random.default_rng(0).uniform(0, 1, 144 * 2))
        assert window.slot_count(10) == 75
        assert build_design_matrix(series, 4, 1, window).n_rows == 2 * 71
        assert build_design_matrix(series, 4, 6, window).n_rows == 2 * 66

    def test_hand_enumerated_toy_day(self):
        # 8 slots per day at step 180, window covering all of them;
        # four days with values day*100 + (1..8)
        window = DaylightWindow(0, 1260)
        values = np.concatenate([d * 100 + np.arange(1.0, 9.0) for d in range(4)])
        series = make_series(values, step=180)
        dm = build_design_matrix(series, 2, 1, window)
        assert dm.n_rows == 4 * 6
        # first day's rows, written out by hand: lags most recent first
        assert np.array_equal(dm.lags[:6], [
            [2, 1], [3, 2], [4, 3], [5, 4], [6, 5], [7, 6],
        ])
        assert np.array_equal(dm.targets[:6], [3, 4, 5, 6, 7, 8])
        # remaining days follow the same pattern shifted by 100
        for d in range(1, 4):
            assert np.array_equal(dm.lags[6 * d : 6 * d + 6], dm.lags[:6] + 100 * d)
            assert np.array_equal(dm.targets[6 * d : 6 * d + 6], dm.targets[:6] + 100 * d)

    def test_rows_never_straddle_midnight(self):
        # distinct per-day offsets: any cross-midnight row would mix them
        window = DaylightWindow(0, 1260)
        values = np.concatenate([d * 1000 + np.arange(8.0) for d in range(10)])
        series = make_series(values, step=180)
        dm = build_design_matrix(series, 3, 2, window)
        for row, target in zip(dm.lags, dm.targets):
            day_of = set(int(v // 1000) for v in np.append(row, target))
            assert len(day_of) == 1

    def test_insufficient_rows(self):
        window = DaylightWindow(0, 1260)
        series = make_series(np.arange(8.0), step=180)
        with pytest.raises(DataValidationError, match="design rows"):
            build_design_matrix(series, 2, 1, window)  # 6 rows < 20

    def test_bad_order_and_horizon(self):
        series = make_series(np.zeros(144))
        with pytest.raises(DataValidationError):
            build_design_matrix(series, 0, 1)
        with pytest.raises(DataValidationError):
            build_design_matrix(series, 2, 0)


class TestFitWeights:
    def test_target_equals_first_lag(self):
        rng = np.random.default_rng(1)
        X = rng.standard_normal((200, 4))
        dm = DesignMatrix(lags=X, targets=X[:, 0].copy(), order=4, horizon=1)
        w = fit_weights(dm)
        assert np.abs(w - [1.0, 0.0, 0.0, 0.0]).max() < 1e-10

    def test_recovers_simulated_ar2(self):
        # targets follow x_n = 0.5 x_{n-1} + 0.3 x_{n-2} + eps with
        # eps ~ N(0, 1e-6); the lag signal carries unit-scale
        # excitation so the noise floor, not sampling error, bounds
        # the recovery
        rng = np.random.default_rng(2)
        n = 6000
        x = rng.standard_normal(n)
        eps = rng.standard_normal(n - 2) * 1e-3
        targets = 0.5 * x[1:-1] + 0.3 * x[:-2] + eps
        dm = DesignMatrix(
            lags=np.column_stack([x[1:-1], x[:-2]]), targets=targets, order=2, horizon=1
        )
        w = fit_weights(dm)
        assert np.abs(w - [0.5, 0.3]).max() < 1e-3

    def test_matches_hand_solved_normal_equations(self):
        # X'X = [[2,1],[1,2]], X'y = [3,4]; w = [2/3, 5/3] by hand
        X = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        y = np.array([1.0, 2.0, 2.0])
        dm = DesignMatrix(lags=X, targets=y, order=2, horizon=1)
        w = fit_weights(dm)
        assert np.abs(w - [2.0 / 3.0, 5.0 / 3.0]).max() < 1e-12

    def test_residual_orthogonality(self):
        rng = np.random.default_rng(3)
        X = rng.standard_normal((500, 4))
        y = X @ np.array([0.4, -0.2, 0.1, 0.05]) + rng.standard_normal(500)
        dm = DesignMatrix(lags=X, targets=y, order=4, horizon=1)
        w = fit_weights(dm)
        grad = np.abs(X.T @ (X @ w - y)).max()
        assert grad < 1e-8 * np.abs(X.T @ y).max()

    def test_rank_deficient_reports_condition(self):
        col = np.random.default_rng(4).standard_normal(100)
        X = np.column_stack([col, col])
        dm = DesignMatrix(lags=X, targets=col, order=2, horizon=1)
        with pytest.raises(NumericalError, match="condition"):
            fit_weights(dm)

    def test_underdetermined(self):
        dm = DesignMatrix(lags=np.ones((2, 3)), targets=np.ones(2), order=3, horizon=1)
        with pytest.raises(DataValidationError, match="underdetermined"):
            fit_weights(dm)


class TestPredictStep:
    def fitted_model(self, weights_h1):
        return MarModel(
            order=len(weights_h1),
            horizons=(1,),
            weights={1: np.asarray(weights_h1, dtype=np.float64)},
            scaler=Scaler(mu=400.0, sigma=250.0),
            profile=EnsembleProfile(
                means=np.zeros(144), support_counts=np.ones(144, dtype=int)
            ),
            daylight=DaylightWindow(),
            step=10,
        )

    def test_persistence_weights(self):
        model = self.fitted_model([1.0, 0.0, 0.0, 0.0])
        assert predict_step(model, np.array([5.5, 1.0, 2.0, 3.0]), 1) == 5.5

    def test_zero_lags(self):
        model = self.fitted_model([0.3, 0.2, 0.1, 0.05])
        assert predict_step(model, np.zeros(4), 1) == 0.0

    def test_hand_dot_product(self):
        model = self.fitted_model([0.5, 0.3])
        assert predict_step(model, np.array([2.0, -1.0]), 1) == pytest.approx(0.7)

    def test_lag_count_mismatch(self):
        model = self.fitted_model([0.5, 0.3])
        with pytest.raises(DataValidationError):
            predict_step(model, np.zeros(3), 1)

    def test_unknown_horizon(self):
        model = self.fitted_model([0.5, 0.3])
        with pytest.raises(UsageError):
            predict_step(model, np.zeros(2), 9)


class TestFitAllHorizons:
    def test_default_shape_on_mixed_100d(self):
        train, _ = split(generate_synthetic(100, "mixed", seed=6), 0.7)
        model = fit_all_horizons(train)
        assert model.horizons == (1, 3, 6)
        assert model.order == 4
        for h in (1, 3, 6):
            assert model.weights[h].shape == (4,)
            assert np.all(np.isfinite(model.weights[h]))

    def test_refit_is_bit_identical(self, mixed_30d):
        train, _ = split(mixed_30d, 0.7)
        a = fit_all_horizons(train)
        b = fit_all_horizons(train)
        for h in a.horizons:
            assert np.array_equal(a.weights[h], b.weights[h])

    def test_plain_ar_differs_from_mar(self, cloudy_30d):
        train, _ = split(cloudy_30d, 0.7)
        mar = fit_all_horizons(train, MarConfig(ensemble_enabled=True))
        ar = fit_all_horizons(train, MarConfig(ensemble_enabled=False))
        assert not np.array_equal(mar.weights[1], ar.weights[1])
        assert not ar.ensemble_enabled

    def test_auto_order_selects_from_pacf(self, cloudy_30d):
        train, _ = split(cloudy_30d, 0.7)
        model = fit_all_horizons(train, MarConfig(order=None))
        assert model.order >= 1

    def test_scaler_and_profile_from_training_split(self, mixed_30d):
        train, _ = split(mixed_30d, 0.7)
        model = fit_all_horizons(train)
        from solarcast import ensemble_profile, fit_scaler, standardize

        scaler = fit_scaler(train)
        assert model.scaler == scaler
        profile = ensemble_profile(standardize(train, scaler))
        assert np.array_equal(model.profile.means, profile.means)


class TestForecast:
    def test_profile_day_is_reproduced_exactly(self, mixed_30d):
        train, _ = split(mixed_30d, 0.7)
        model = fit_all_horizons(train)
        # a test day equal to the (destandardized) profile has all-zero
        # lags in the ensemble-deducted domain, so every prediction is
        # the profile value itself
        profile_day = destandardize(make_series(model.profile.means), model.scaler)
        clipped = make_series(np.clip(profile_day.values, 0.0, None))
        report = forecast(model, clipped, 1)
        assert np.abs(report.predicted - report.actual).max() < 1e-9

    def test_clear_easier_than_cloudy(self):
        train, _ = split(generate_synthetic(60, "mixed", seed=8), 0.7)
        model = fit_all_horizons(train)
        clear_test = generate_synthetic(10, "clear", seed=9)
        cloudy_test = generate_synthetic(10, "cloudy", seed=9)
        clear_report = forecast(model, clear_test, 1)
        cloudy_report = forecast(model, cloudy_test, 1)
        assert mape(clear_report.actual, clear_report.predicted) < mape(
            cloudy_report.actual, cloudy_report.predicted
        )

    def test_predictions_never_negative(self, cloudy_30d):
        train, test = split(cloudy_30d, 0.7)
        model = fit_all_horizons(train)
        for h in (1, 3, 6):
            assert forecast(model, test, h).predicted.min() >= 0.0

    def test_row_count_and_timestamps(self, mixed_30d):
        train, test = split(mixed_30d, 0.7)
        model = fit_all_horizons(train)
        report = forecast(model, test, 1)
        # 76-slot window, order 4, horizon 1: 72 rows per day
        assert len(report) == test.n_days * 72
        assert report.timestamps[0].hour * 60 + report.timestamps[0].minute == 360 + (4 + 1 - 1) * 10

    def test_horizon_degradation_single_seed(self):
        series = generate_synthetic(100, "mixed", seed=10)
        train, test = split(series, 0.7)
        model = fit_all_horizons(train)
        errors = {h: rmse(*_pairs(forecast(model, test, h))) for h in (1, 3, 6)}
        assert errors[6] >= errors[3] >= errors[1]

    def test_pure_function_of_inputs(self, mixed_30d):
        train, test = split(mixed_30d, 0.7)
        model = fit_all_horizons(train)
        a = forecast(model, test, 3)
        b = forecast(model, test, 3)
        assert np.array_equal(a.predicted, b.predicted)
        assert a.timestamps == b.timestamps

    def test_unfitted_horizon(self, mixed_30d):
        train, test = split(mixed_30d, 0.7)
        model = fit_all_horizons(train, MarConfig(horizons=(1,)))
        with pytest.raises(UsageError, match="horizon"):
            forecast(model, test, 6)

    def test_step_mismatch(self, mixed_30d):
        train, _ = split(mixed_30d, 0.7)
        model = fit_all_horizons(train)
        other = generate_synthetic(3, "clear", seed=1, step=30)
        with pytest.raises(DataValidationError, match="step"):
            forecast(model, other, 1)


class TestRecursive:
    def test_recursive_equals_direct_at_horizon_one(self, mixed_30d):
        train, test = split(mixed_30d, 0.7)
        model = fit_all_horizons(train)
        direct = forecast(model, test, 1)
        recursive = forecast(model, test, 1, recursive=True)
        assert np.array_equal(direct.predicted, recursive.predicted)

    def test_recursive_multi_step_is_finite_and_aligned(self, mixed_30d):
        train, test = split(mixed_30d, 0.7)
        model = fit_all_horizons(train)
        direct = forecast(model, test, 6)
        recursive = forecast(model, test, 6, recursive=True)
        assert recursive.timestamps == direct.timestamps
        assert np.all(np.isfinite(recursive.predicted))

    def test_recursive_needs_one_step_weights(self, mixed_30d):
        train, test = split(mixed_30d, 0.7)
        model = fit_all_horizons(train, MarConfig(horizons=(3,)))
        with pytest.raises(UsageError, match="1-step"):
            forecast(model, test, 3, recursive=True)


class TestNoiseFreeRecovery:
    def test_exact_order4_recurrence(self):
        signal, coeffs = sinusoid_recurrence(40 * 144)
        series = make_series(signal)
        dm = build_design_matrix(series, 4, 1, FULL_DAY_WINDOW)
        w = fit_weights(dm)
        assert np.abs(w - coeffs).max() < 1e-6


def _pairs(report):
    return report.actual, report.predicted
