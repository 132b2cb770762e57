"""
describe command: dataset composition by word origin and part of speech,
or the annotators' background with --annotators.
"""

import argparse

from datalayer.mapper.report_mapper import AnalysisMapper
from services.dataset_service import DatasetService
from commands.context import RunContext
from utils.exceptions import ConfigError


def _describe(args: argparse.Namespace, context: RunContext) -> None:
    if args.annotators:
        if not context.run_config.profiles:
            raise ConfigError("--annotators needs a profiles file (--profiles or PROFILES)")
        rows = DatasetService.describe_profiles(context.datasets.load_profiles(context.run_config.profiles))
        context.emit(AnalysisMapper.profile_rows(rows), rows, columns=AnalysisMapper.PROFILE_COLUMNS)
        return
    table = DatasetService.describe(context.instances())
    context.emit(AnalysisMapper.composition_rows(table), table, columns=("category", "label", *table.splits))


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("describe", parents=[parent], help="Dataset composition per split")
    parser.add_argument("--annotators", action="store_true", help="Summarize annotator profiles instead")
    parser.set_defaults(handler=_describe)
