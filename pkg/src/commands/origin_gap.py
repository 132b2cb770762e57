"""
origin-gap command: word-origin comparison of complexity differences between
two annotator groups.
"""

import argparse

from datalayer.mapper.report_mapper import AnalysisMapper
from datalayer.model.lcp_models import Origin
from services.analysis_service import AnalysisService
from commands.context import RunContext


def _origin_gap(args: argparse.Namespace, context: RunContext) -> None:
    base, other = args.base.lower(), args.other.lower()
    instances, views = context.group_views([base, other])
    frequency = context.features.value_map(args.frequency.lower(), instances)
    table = AnalysisService(context.features, context.config).origin_gap_analysis(
        instances, views[base], views[other], frequency, origins=(Origin(args.origins[0]), Origin(args.origins[1]))
    )
    context.emit(AnalysisMapper.origin_gap_rows(table), table)


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("origin-gap", parents=[parent], help="Complexity differences by word origin")
    parser.add_argument("--base", required=True, metavar="GROUP", help="Reference annotator group")
    parser.add_argument("--other", required=True, metavar="GROUP", help="Compared annotator group")
    parser.add_argument("--frequency", required=True, metavar="NAME", help="Frequency resource for log-frequency")
    parser.add_argument(
        "--origins", nargs=2, metavar=("A", "B"),
        choices=[origin.value for origin in Origin],
        default=[Origin.JAPANESE.value, Origin.CHINESE.value],
    )
    parser.set_defaults(handler=_origin_gap)
