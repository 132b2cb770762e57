"""
Experiment service for the lexical complexity toolkit.

This module trains the LCP and CWI models on trial ratings and evaluates
them on test ratings in the four Group/Individual settings, and renders the
resulting 2x2 tables.
"""

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from datalayer.model.lcp_models import Task, Source, GroupLabelRule
from datalayer.model.dto.dataset_dto import Instance, RatingMatrix, LabeledView
from datalayer.model.dto.model_dto import RidgeModel, LogisticModel
from datalayer.model.dto.experiment_dto import ExperimentConfig, ExperimentReport, ResultTable
from services.feature_service import FeatureService
from utils.exceptions import AnnotatorMismatchError, ValidationError
from utils.metrics import r_squared, macro_f1
from utils.rating_helpers import (
    group_mean, group_majority, mean_threshold_labels, individual_view, individual_labels
)
from utils.regression import ridge_fit, ridge_predict, logistic_fit, logistic_predict, lcp_to_cwi
from utils.statistics import mean_std


logger = logging.getLogger(__name__)

SETTINGS = (
    (Source.GROUP, Source.GROUP),
    (Source.GROUP, Source.INDIVIDUAL),
    (Source.INDIVIDUAL, Source.GROUP),
    (Source.INDIVIDUAL, Source.INDIVIDUAL),
)

Dataset = Tuple[Sequence[Instance], RatingMatrix]
Model = Union[RidgeModel, LogisticModel]


class _Excluded(Exception):
    """A per-annotator run that cannot be carried out."""


class ExperimentService:
    """Service for running and tabulating experiments."""

    def __init__(self, features: FeatureService):
        self.features = features

    # ========================================================================
    # Targets
    # ========================================================================

    @staticmethod
    def _binary(task: Task) -> bool:
        return task in (Task.CWI, Task.LCP_CWI)

    def _group_labels(self, config: ExperimentConfig, matrix: RatingMatrix) -> LabeledView:
        if config.group_label_rule == GroupLabelRule.MEAN_THRESHOLD:
            return mean_threshold_labels(matrix, config.threshold)
        return group_majority(matrix, config.threshold)

    def _train_view(self, config: ExperimentConfig, matrix: RatingMatrix, annotator_id: Optional[str]) -> LabeledView:
        # LCP_CWI trains the regression model on complexity values
        if config.task == Task.CWI:
            if annotator_id is None:
                return self._group_labels(config, matrix)
            return individual_labels(matrix, annotator_id, config.threshold)
        if annotator_id is None:
            return group_mean(matrix)
        return individual_view(matrix, annotator_id)

    def _gold_view(self, config: ExperimentConfig, matrix: RatingMatrix, annotator_id: Optional[str]) -> LabeledView:
        if self._binary(config.task):
            if annotator_id is None:
                return self._group_labels(config, matrix)
            return individual_labels(matrix, annotator_id, config.threshold)
        if annotator_id is None:
            return group_mean(matrix)
        return individual_view(matrix, annotator_id)

    # ========================================================================
    # Fitting & Scoring
    # ========================================================================

    def _rows(self, X: np.ndarray, ids: Sequence[str], view: LabeledView) -> np.ndarray:
        position = {instance_id: i for i, instance_id in enumerate(ids)}
        return X[[position[instance_id] for instance_id in view.instance_ids]]

    def _fit(self, config: ExperimentConfig, X: np.ndarray, ids: Sequence[str], view: LabeledView,
             names: Tuple[str, ...]) -> Model:
        X_view = self._rows(X, ids, view)
        y = view.as_array()
        if config.task == Task.CWI:
            if y.all() or not y.any():
                raise _Excluded("single-class training labels")
            return logistic_fit(
                X_view, y,
                l2_strength=config.logistic_l2,
                class_weight=config.class_weight,
                feature_names=names,
            )
        if y.size < 2:
            raise _Excluded("fewer than 2 training ratings")
        return ridge_fit(X_view, y, l2_strength=config.ridge_l2, feature_names=names)

    def _score(self, config: ExperimentConfig, model: Model, X: np.ndarray, ids: Sequence[str],
               gold: LabeledView) -> float:
        X_view = self._rows(X, ids, gold)
        y = gold.as_array()
        if config.task == Task.LCP:
            if y.size < 2 or np.all(y == y[0]):
                raise _Excluded("constant gold ratings")
            return r_squared(y, ridge_predict(model, X_view))
        if config.task == Task.LCP_CWI:
            return macro_f1(y, lcp_to_cwi(ridge_predict(model, X_view), config.threshold))
        return macro_f1(y, logistic_predict(model, X_view))

    # ========================================================================
    # Experiments
    # ========================================================================

    def run_experiment(self, config: ExperimentConfig, trial: Dataset, test: Dataset) -> ExperimentReport:
        """
        Train on trial data and evaluate on test data in one setting.

        Group-Group fits and scores one model. Group-Individual scores the
        group model against each annotator. Individual-Group fits one model
        per annotator and scores each on the group targets.
        Individual-Individual scores each annotator's model on that
        annotator's own test targets. Runs are ordered by annotator id; a run
        that cannot be carried out (single-class CWI training labels) is
        excluded with a warning.

        Args:
            config: Task, setting, features and hyperparameters
            trial: Training instances and ratings
            test: Evaluation instances and ratings

        Returns:
            ExperimentReport

        Raises:
            AnnotatorMismatchError: If individual sources are used and the
                trial and test annotators differ
        """
        trial_instances, trial_matrix = trial
        test_instances, test_matrix = test
        individual = Source.INDIVIDUAL in (config.train_source, config.test_source)
        if individual and set(trial_matrix.annotator_ids) != set(test_matrix.annotator_ids):
            raise AnnotatorMismatchError(
                "trial and test ratings come from different annotators",
                details={
                    "trial_only": sorted(set(trial_matrix.annotator_ids) - set(test_matrix.annotator_ids)),
                    "test_only": sorted(set(test_matrix.annotator_ids) - set(trial_matrix.annotator_ids)),
                },
            )

        X_train, names = self.features.build_feature_matrix(trial_instances, config.feature_spec)
        X_test, _ = self.features.build_feature_matrix(test_instances, config.feature_spec)
        train_ids = [instance.id for instance in trial_instances]
        test_ids = [instance.id for instance in test_instances]
        metric_name = "R2" if config.task == Task.LCP else "F1"

        def run(train_annotator: Optional[str], test_annotator: Optional[str]) -> float:
            model = self._fit(config, X_train, train_ids, self._train_view(config, trial_matrix, train_annotator), names)
            return self._score(config, model, X_test, test_ids, self._gold_view(config, test_matrix, test_annotator))

        annotators = sorted(trial_matrix.annotator_ids)
        if config.train_source == Source.GROUP and config.test_source == Source.GROUP:
            runs: List[Tuple[Optional[str], Callable[[], float]]] = [(None, lambda: run(None, None))]
        elif config.train_source == Source.GROUP:
            try:
                group_model = self._fit(config, X_train, train_ids, self._train_view(config, trial_matrix, None), names)
            except _Excluded as reason:
                raise ValidationError(f"{config.setting} {config.task.value} run failed: {reason}") from None
            runs = [
                (a, lambda a=a: self._score(
                    config, group_model, X_test, test_ids, self._gold_view(config, test_matrix, a)
                ))
                for a in annotators
            ]
        elif config.test_source == Source.GROUP:
            runs = [(a, lambda a=a: run(a, None)) for a in annotators]
        else:
            runs = [(a, lambda a=a: run(a, a)) for a in annotators]

        scores: Dict[str, float] = {}
        excluded: Dict[str, str] = {}
        for annotator_id, execute in runs:
            try:
                score = execute()
            except _Excluded as reason:
                if annotator_id is None:
                    raise ValidationError(f"{config.setting} {config.task.value} run failed: {reason}") from None
                logger.warning(f"Excluding annotator {annotator_id} from {config.setting}: {reason}")
                excluded[annotator_id] = str(reason)
                continue
            logger.debug(f"{config.task.value} {config.setting} {annotator_id or 'group'}: {score:.4f}")
            scores[annotator_id or "group"] = score

        if not scores:
            raise ValidationError(f"every {config.setting} run was excluded")
        if runs[0][0] is None:
            report = ExperimentReport(
                task=config.task,
                train_source=config.train_source,
                test_source=config.test_source,
                features=names,
                metric_name=metric_name,
                mean=scores["group"],
            )
        else:
            mean, std = mean_std(list(scores.values()))
            report = ExperimentReport(
                task=config.task,
                train_source=config.train_source,
                test_source=config.test_source,
                features=names,
                metric_name=metric_name,
                mean=mean,
                std=None if len(scores) < 2 else std,
                per_annotator=scores,
                excluded=excluded,
            )
        logger.info(f"{config.task.value} {config.setting} ({', '.join(names)}): {metric_name}={report.mean:.4f}")
        return report

    def run_all_settings(
        self,
        task: Task,
        feature_spec: Sequence[str],
        trial: Dataset,
        test: Dataset,
        **hyperparameters,
    ) -> List[ExperimentReport]:
        """Run the four settings in the order GG, GI, IG, II."""
        reports = []
        for train_source, test_source in SETTINGS:
            config = ExperimentConfig(
                task=task,
                train_source=train_source,
                test_source=test_source,
                feature_spec=tuple(feature_spec),
                **hyperparameters,
            )
            reports.append(self.run_experiment(config, trial, test))
        return reports

    def fit_group_model(self, config: ExperimentConfig, trial: Dataset) -> Model:
        """Fit the model trained on the group targets of the trial data."""
        instances, matrix = trial
        X, names = self.features.build_feature_matrix(instances, config.feature_spec)
        ids = [instance.id for instance in instances]
        try:
            return self._fit(config, X, ids, self._train_view(config, matrix, None), names)
        except _Excluded as reason:
            raise ValidationError(f"group {config.task.value} model cannot be fitted: {reason}") from None

    # ========================================================================
    # Tables
    # ========================================================================

    @staticmethod
    def format_cell(report: ExperimentReport) -> str:
        """Mean with 2 decimals, followed by the standard deviation in parentheses when present."""
        if report.std is None:
            return f"{report.mean:.2f}"
        return f"{report.mean:.2f}({report.std:.2f})"

    @staticmethod
    def report_tables(reports: Sequence[ExperimentReport]) -> List[ResultTable]:
        """
        One 2x2 table per (task, features) with train sources as rows and
        test sources as columns.

        Raises:
            ValidationError: If a setting is missing for some task
        """
        grouped: Dict[Tuple[Task, Tuple[str, ...]], Dict[Tuple[Source, Source], ExperimentReport]] = {}
        for report in reports:
            grouped.setdefault((report.task, report.features), {})[report.setting] = report

        tables = []
        for (task, features), cells in grouped.items():
            missing = [setting for setting in SETTINGS if setting not in cells]
            if missing:
                train, test = missing[0]
                raise ValidationError(
                    f"missing {train.value.capitalize()}-{test.value.capitalize()} result for {task.value}"
                )
            first = next(iter(cells.values()))
            tables.append(ResultTable(
                task=task,
                metric_name=first.metric_name,
                features=features,
                cells={
                    train.value.capitalize(): {
                        test.value.capitalize(): ExperimentService.format_cell(cells[(train, test)])
                        for test in (Source.GROUP, Source.INDIVIDUAL)
                    }
                    for train in (Source.GROUP, Source.INDIVIDUAL)
                },
            ))
        return tables
