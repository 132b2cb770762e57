"""
experiment command: train on trial ratings, evaluate on test ratings in the
four Group/Individual settings.
"""

import argparse
import os
from typing import List

from datalayer.mapper.report_mapper import ExperimentMapper
from datalayer.model.dto.experiment_dto import ExperimentConfig
from datalayer.model.lcp_models import Task, Split, Source, ClassWeight, GroupLabelRule
from datalayer.repository.model_repository import ModelRepository
from services.dataset_service import DatasetService
from services.experiment_service import ExperimentService
from commands.context import RunContext
from utils.exceptions import ConfigError


TASKS = {"lcp": [Task.LCP], "cwi": [Task.CWI], "lcp_cwi": [Task.LCP_CWI], "all": list(Task)}
TABLE_COLUMNS = ("task", "metric", "features", "train", "Group", "Individual")


def _feature_sets(raw: List[str], context: RunContext) -> List[List[str]]:
    sets = [[name.strip().lower() for name in value.split(",") if name.strip()] for value in raw]
    sets = [names for names in sets if names]
    if not sets:
        raise ConfigError("--features expects at least one feature name")
    known = set(context.features.names)
    for names in sets:
        unknown = [name for name in names if name not in known]
        if unknown:
            raise ConfigError(f"unknown feature '{unknown[0]}' (configure it with --resource)")
    return sets


def _save_models(args: argparse.Namespace, context: RunContext, service: ExperimentService, trial, hyperparameters: dict) -> None:
    repo = ModelRepository()
    for task in TASKS[args.task]:
        for features in _feature_sets(args.features, context):
            config = ExperimentConfig(
                task=task,
                train_source=Source.GROUP,
                test_source=Source.GROUP,
                feature_spec=tuple(features),
                **hyperparameters,
            )
            path = os.path.join(args.save_models, f"{task.value.lower()}_{'+'.join(features)}.json")
            repo.save(service.fit_group_model(config, trial), path)


def _experiment(args: argparse.Namespace, context: RunContext) -> None:
    config = context.config
    instances, matrix = context.dataset()
    trial = DatasetService.split_matrix(instances, matrix, Split.TRIAL)
    test = DatasetService.split_matrix(instances, matrix, Split.TEST)
    if trial[1] is None or test[1] is None:
        raise ConfigError("experiments need both trial and test instances")

    hyperparameters = {
        "threshold": context.run_config.threshold,
        "ridge_l2": args.ridge_l2 if args.ridge_l2 is not None else config.ridge_l2,
        "logistic_l2": args.logistic_l2 if args.logistic_l2 is not None else config.logistic_l2,
        "class_weight": ClassWeight(args.class_weight),
        "group_label_rule": GroupLabelRule(args.rule or config.group_label_rule),
    }
    service = ExperimentService(context.features)
    reports = [
        report
        for task in TASKS[args.task]
        for features in _feature_sets(args.features, context)
        for report in service.run_all_settings(task, features, trial, test, **hyperparameters)
    ]
    tables = ExperimentService.report_tables(reports)

    if args.save_models:
        _save_models(args, context, service, trial, hyperparameters)

    payload = {"tables": tables, "reports": reports}
    if args.detail:
        context.emit(ExperimentMapper.report_rows(reports), payload, columns=ExperimentMapper.REPORT_COLUMNS)
    else:
        context.emit(ExperimentMapper.table_rows(tables), payload, columns=TABLE_COLUMNS)


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("experiment", parents=[parent], help="Group vs individual LCP/CWI experiments")
    parser.add_argument("--task", choices=sorted(TASKS), default="lcp")
    parser.add_argument(
        "--features", action="append", required=True, metavar="A,B",
        help="Comma-separated feature set (repeatable, one table per set)",
    )
    parser.add_argument("--rule", choices=[rule.value for rule in GroupLabelRule], help="Group CWI label rule")
    parser.add_argument("--ridge-l2", type=float, help="Ridge L2 strength")
    parser.add_argument("--logistic-l2", type=float, help="Logistic regression L2 strength")
    parser.add_argument(
        "--class-weight", choices=[weight.value for weight in ClassWeight], default=ClassWeight.BALANCED.value
    )
    parser.add_argument("--save-models", metavar="DIR", help="Write the group-trained models as JSON files")
    parser.add_argument("--detail", action="store_true", help="One row per setting instead of 2x2 tables")
    parser.set_defaults(handler=_experiment)
