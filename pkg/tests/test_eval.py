"""
Evaluation tests for the lexical complexity toolkit.

Tests for the metrics, the Group/Individual experiment settings, result
tables and plot data.
"""

import numpy as np
import pytest
from pydantic import ValidationError as PydanticValidationError

from datalayer.model.dto.dataset_dto import RatingMatrix
from datalayer.model.dto.experiment_dto import ExperimentConfig, ExperimentReport
from datalayer.model.lcp_models import GroupLabelRule, Source, Split, Task
from services.dataset_service import DatasetService
from services.experiment_service import ExperimentService
from services.feature_service import FeatureService
from services.plot_service import PlotService
from utils.exceptions import AnnotatorMismatchError, NotFoundError, ValidationError
from utils.metrics import macro_f1, r_squared
from utils.rating_helpers import group_mean, select_annotators
from utils.regression import ridge_fit, ridge_predict
from utils.statistics import mean_std


@pytest.fixture
def features(synthetic) -> FeatureService:
    _, _, signal = synthetic
    service = FeatureService()
    service.register("signal", signal)
    return service


@pytest.fixture
def splits(synthetic):
    """(trial, test) datasets of the synthetic ratings."""
    instances, matrix, _ = synthetic
    return (
        DatasetService.split_matrix(instances, matrix, Split.TRIAL),
        DatasetService.split_matrix(instances, matrix, Split.TEST),
    )


def report(mean: float, std: float = None, per_annotator=None, source: Source = Source.GROUP) -> ExperimentReport:
    return ExperimentReport(
        task=Task.LCP,
        train_source=Source.GROUP,
        test_source=source,
        features=("signal",),
        metric_name="R2",
        mean=mean,
        std=std,
        per_annotator=per_annotator,
    )


@pytest.mark.eval
class TestMetrics:
    """Test R^2 and macro F1."""

    def test_r_squared(self):
        assert r_squared([0.0, 1.0], [0.25, 0.75]) == pytest.approx(0.75)

    def test_r_squared_can_be_negative(self):
        assert r_squared([0.0, 1.0], [1.0, 0.0]) == pytest.approx(-3.0)

    def test_r_squared_constant_gold(self):
        with pytest.raises(ValidationError):
            r_squared([0.5, 0.5], [0.25, 0.75])

    def test_macro_f1(self):
        """Test positive F1 2/3 and negative F1 4/5 average to 0.7333."""
        assert macro_f1([True, True, False, False], [True, False, False, False]) == pytest.approx(0.7333, abs=1e-4)

    def test_macro_f1_class_swap(self):
        rng = np.random.default_rng(8)
        gold = rng.random(25) < 0.4
        pred = rng.random(25) < 0.5

        assert macro_f1(gold, pred) == pytest.approx(macro_f1(~gold, ~pred))

    def test_matches_confusion_counts(self):
        """Test both metrics against their definitions on random fixtures."""
        rng = np.random.default_rng(12)
        gold = rng.random(30)
        pred = gold + rng.normal(0.0, 0.2, size=30)
        labels, guesses = gold > 0.4, pred > 0.5

        def f1(tp, fp, fn):
            return 2 * tp / (2 * tp + fp + fn)

        tp, tn = np.sum(labels & guesses), np.sum(~labels & ~guesses)
        fp, fn = np.sum(~labels & guesses), np.sum(labels & ~guesses)
        ss_tot = np.sum((gold - gold.mean()) ** 2)

        assert r_squared(gold, pred) == pytest.approx(1 - np.sum((gold - pred) ** 2) / ss_tot, abs=1e-12)
        assert macro_f1(labels, guesses) == pytest.approx((f1(tp, fp, fn) + f1(tn, fn, fp)) / 2, abs=1e-12)

    def test_macro_f1_single_class(self):
        """Test an absent class contributes an F1 of 0."""
        assert macro_f1([True, True], [True, True]) == pytest.approx(0.5)


@pytest.mark.eval
class TestExperimentSettings:
    """Test the four train/test settings on synthetic ratings."""

    def test_lcp_settings(self, features, splits):
        trial, test = splits

        reports = ExperimentService(features).run_all_settings(Task.LCP, ["signal"], trial, test)

        assert [r.setting for r in reports] == [
            (Source.GROUP, Source.GROUP),
            (Source.GROUP, Source.INDIVIDUAL),
            (Source.INDIVIDUAL, Source.GROUP),
            (Source.INDIVIDUAL, Source.INDIVIDUAL),
        ]
        group_group = reports[0]
        assert group_group.std is None
        assert group_group.per_annotator is None
        assert group_group.mean > 0.5
        for individual in reports[1:]:
            assert sorted(individual.per_annotator) == sorted(trial[1].annotator_ids)
            assert individual.std is not None
            assert individual.metric_name == "R2"

    def test_group_beats_individual_targets(self, features, splits):
        """Test scoring on noisy single annotators lowers R^2 of the same group model."""
        trial, test = splits

        group_group, group_individual, *_ = ExperimentService(features).run_all_settings(
            Task.LCP, ["signal"], trial, test
        )

        assert group_individual.mean < group_group.mean

    def test_deterministic(self, features, splits):
        trial, test = splits
        service = ExperimentService(features)

        first = [r.model_dump() for r in service.run_all_settings(Task.CWI, ["signal"], trial, test)]
        second = [r.model_dump() for r in service.run_all_settings(Task.CWI, ["signal"], trial, test)]

        assert first == second

    def test_cwi_settings(self, features, splits):
        trial, test = splits

        reports = ExperimentService(features).run_all_settings(Task.CWI, ["signal"], trial, test)

        assert all(r.metric_name == "F1" for r in reports)
        assert all(0.0 <= r.mean <= 1.0 for r in reports)
        for individual in reports[1:]:
            assert set(individual.per_annotator) | set(individual.excluded) == set(trial[1].annotator_ids)

    def test_lcp_cwi_and_label_rules(self, features, splits):
        trial, test = splits
        service = ExperimentService(features)

        converted = service.run_all_settings(Task.LCP_CWI, ["signal"], trial, test)
        thresholded = service.run_all_settings(
            Task.CWI, ["signal"], trial, test, group_label_rule=GroupLabelRule.MEAN_THRESHOLD
        )

        assert converted[0].metric_name == "F1"
        assert thresholded[0].per_annotator is None

    def test_annotator_mismatch(self, features, splits):
        """Test individual settings need the same annotators in trial and test."""
        trial, (test_instances, test_matrix) = splits
        test = (test_instances, select_annotators(test_matrix, test_matrix.annotator_ids[:6]))
        service = ExperimentService(features)
        config = ExperimentConfig(
            task=Task.LCP, train_source=Source.INDIVIDUAL, test_source=Source.GROUP, feature_spec=("signal",)
        )

        with pytest.raises(AnnotatorMismatchError):
            service.run_experiment(config, trial, test)

        group_only = config.model_copy(update={"train_source": Source.GROUP})
        assert service.run_experiment(group_only, trial, test).std is None

    @pytest.mark.parametrize("task", list(Task))
    def test_identical_annotators(self, features, synthetic, task):
        """Test copies of one annotator score the same in every setting with zero spread."""
        instances, matrix, _ = synthetic
        copies = RatingMatrix(
            annotator_ids=matrix.annotator_ids,
            instance_ids=matrix.instance_ids,
            values=np.tile(matrix.values[0], (matrix.n_annotators, 1)),
        )
        trial = DatasetService.split_matrix(instances, copies, Split.TRIAL)
        test = DatasetService.split_matrix(instances, copies, Split.TEST)

        reports = ExperimentService(features).run_all_settings(task, ["signal"], trial, test)

        assert [r.mean for r in reports] == [reports[0].mean] * 4
        assert [r.std for r in reports[1:]] == [0.0] * 3

    def test_group_group_composition(self, features, splits):
        """Test Group-Group is the R^2 of a ridge fit on trial means against test means."""
        (trial_instances, trial_matrix), (test_instances, test_matrix) = splits
        X_train, _ = features.build_feature_matrix(trial_instances, ["signal"])
        X_test, _ = features.build_feature_matrix(test_instances, ["signal"])
        model = ridge_fit(X_train, group_mean(trial_matrix).targets, l2_strength=1.0)

        group_group = ExperimentService(features).run_all_settings(
            Task.LCP, ["signal"], (trial_instances, trial_matrix), (test_instances, test_matrix)
        )[0]

        expected = r_squared(group_mean(test_matrix).targets, ridge_predict(model, X_test))
        assert group_group.mean == pytest.approx(expected, abs=1e-12)

    def test_summary_recomputes_from_annotators(self, features, splits):
        trial, test = splits

        reports = ExperimentService(features).run_all_settings(Task.LCP, ["signal"], trial, test)

        for individual in reports[1:]:
            assert (individual.mean, individual.std) == mean_std(list(individual.per_annotator.values()))

    def test_unknown_feature(self, features, splits):
        trial, test = splits

        with pytest.raises(NotFoundError):
            ExperimentService(features).run_all_settings(Task.LCP, ["missing"], trial, test)


@pytest.mark.eval
class TestResultTables:
    """Test cell rendering and 2x2 tables."""

    def test_format_cell(self):
        assert ExperimentService.format_cell(report(0.4123)) == "0.41"
        assert ExperimentService.format_cell(
            report(0.4123, std=0.1512, per_annotator={"A1": 0.3, "A2": 0.5}, source=Source.INDIVIDUAL)
        ) == "0.41(0.15)"

    def test_std_requires_several_runs(self):
        with pytest.raises(PydanticValidationError):
            report(0.4, std=0.1)
        with pytest.raises(PydanticValidationError):
            report(0.4, per_annotator={"A1": 0.3, "A2": 0.5}, source=Source.INDIVIDUAL)

    def test_tables(self, features, splits):
        trial, test = splits
        reports = ExperimentService(features).run_all_settings(Task.LCP, ["signal"], trial, test)

        tables = ExperimentService.report_tables(reports)

        assert len(tables) == 1
        assert tables[0].metric_name == "R2"
        assert set(tables[0].cells) == {"Group", "Individual"}
        assert tables[0].cells["Group"]["Group"] == ExperimentService.format_cell(reports[0])
        assert "(" in tables[0].cells["Individual"]["Individual"]

    def test_missing_setting(self, features, splits):
        trial, test = splits
        reports = ExperimentService(features).run_all_settings(Task.LCP, ["signal"], trial, test)

        with pytest.raises(ValidationError, match="missing Individual-Individual result for LCP"):
            ExperimentService.report_tables(reports[:3])


@pytest.mark.eval
class TestPlotData:
    """Test histogram, scatter and linear-fit data."""

    def test_histogram(self, trial_instances, trial_views):
        rows = PlotService(bins=4).histogram(trial_instances, "original", trial_views["original"])

        assert len(rows) == 4
        assert sum(row.count for row in rows) == 30
        assert (rows[0].lower, rows[-1].upper) == (0.0, 1.0)
        assert {row.split for row in rows} == {"trial"}

    def test_bins(self):
        with pytest.raises(ValidationError):
            PlotService(bins=0)

    def test_exact_line(self):
        """Test points on a line give that line and a zero-width band."""
        x = np.array([-6.0, -5.0, -4.0, -3.0])

        fit, band = PlotService.linear_fit("original", x, 0.1 * x + 0.9)

        assert fit.slope == pytest.approx(0.1)
        assert fit.intercept == pytest.approx(0.9)
        assert len(band) == 100
        assert (band[0].x, band[-1].x) == (-6.0, -3.0)
        assert all(point.upper - point.lower == pytest.approx(0.0, abs=1e-9) for point in band)

    def test_band_is_narrowest_at_mean(self):
        rng = np.random.default_rng(2)
        x = np.linspace(-7.0, -3.0, 30)

        _, band = PlotService.linear_fit("v", x, -0.1 * x + rng.normal(0.0, 0.1, size=30))
        widths = [point.upper - point.lower for point in band]

        assert min(widths) < widths[0]
        assert min(widths) < widths[-1]
        assert all(point.lower <= point.fit <= point.upper for point in band)

    def test_too_few_points(self):
        with pytest.raises(ValidationError):
            PlotService.linear_fit("v", np.array([1.0, 2.0]), np.array([0.1, 0.2]))

    def test_plot_data(self, trial_instances, trial_views, trial_frequency):
        views = {name: trial_views[name] for name in ("original", "chinese_l1")}

        data = PlotService().plot_data(trial_instances, views, trial_frequency)

        assert len(data.scatter) == 60
        assert [fit.view for fit in data.fits] == ["original", "chinese_l1"]
        assert all(fit.slope < 0 for fit in data.fits)
        assert len(data.bands) == 200
        assert len(data.histogram) == 20
