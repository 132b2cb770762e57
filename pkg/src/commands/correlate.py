"""
correlate command: PCC and potential PCC of lexical features with complexity,
and Steiger comparisons between features.
"""

import argparse
from typing import List, Tuple

from datalayer.mapper.report_mapper import AnalysisMapper
from datalayer.model.lcp_models import Split
from services.analysis_service import AnalysisService
from services.dataset_service import DatasetService
from commands.context import RunContext
from utils.exceptions import ConfigError
from utils.rating_helpers import group_mean


def _pair(raw: str) -> Tuple[str, str]:
    name_a, separator, name_b = raw.partition(":")
    if not separator or not name_a.strip() or not name_b.strip():
        raise ConfigError(f"--steiger expects A:B, got '{raw}'")
    return name_a.strip().lower(), name_b.strip().lower()


def _correlate(args: argparse.Namespace, context: RunContext) -> None:
    instances, matrix = context.dataset()
    if args.split != "all":
        instances, matrix = DatasetService.split_matrix(instances, matrix, Split(args.split))
        if matrix is None:
            raise ConfigError(f"the dataset has no {args.split} instances")
    complexity = group_mean(matrix)
    service = AnalysisService(context.features, context.config)

    if args.steiger:
        rows: List[dict] = []
        payload = []
        for name_a, name_b in map(_pair, args.steiger):
            result = service.compare_correlations(instances, complexity, name_a, name_b)
            rows.extend(AnalysisMapper.steiger_rows(name_a, name_b, result))
            payload.append({"feature_a": name_a, "feature_b": name_b, **result.model_dump()})
        context.emit(rows, payload)
        return

    names = context.feature_names([name.lower() for name in args.features or ()])
    table = service.correlation_table(instances, complexity, names)
    context.emit(AnalysisMapper.correlation_rows(table), table, columns=AnalysisMapper.CORRELATION_COLUMNS)


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("correlate", parents=[parent], help="Feature correlations with complexity")
    parser.add_argument(
        "--feature", dest="features", action="append", metavar="NAME",
        help="Configured resource to correlate (repeatable, default: all)",
    )
    parser.add_argument(
        "--steiger", action="append", default=[], metavar="A:B",
        help="Compare the correlations of two features instead (repeatable)",
    )
    parser.add_argument("--split", choices=["all", Split.TRIAL.value, Split.TEST.value], default="all")
    parser.set_defaults(handler=_correlate)
