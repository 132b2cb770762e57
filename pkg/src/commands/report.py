"""
report command: per-word difference tables and plot data.
"""

import argparse

from datalayer.mapper.report_mapper import AnalysisMapper, ExperimentMapper
from services.analysis_service import AnalysisService
from services.plot_service import PlotService
from commands.context import RunContext
from utils.exceptions import ConfigError
from utils.rating_helpers import group_mean


SECTIONS = ("histogram", "scatter", "fit", "band")


def _diff(args: argparse.Namespace, context: RunContext) -> None:
    base, other = (name.lower() for name in args.diff)
    instances, views = context.group_views([base, other])
    frequency = context.features.value_map(args.frequency.lower(), instances)
    rows = AnalysisService(context.features, context.config).difference_table(
        instances, views[base], views[other], frequency
    )
    context.emit(AnalysisMapper.difference_rows(rows), rows, columns=AnalysisMapper.DIFFERENCE_COLUMNS)


def _plot(args: argparse.Namespace, context: RunContext) -> None:
    if not args.view:
        raise ConfigError("--plot needs at least one --view GROUP")
    instances = context.instances()
    views = {name.lower(): group_mean(context.group(name.lower())[1]) for name in args.view}
    frequency = context.features.value_map(args.frequency.lower(), instances)
    bins = args.bins if args.bins is not None else context.config.plot_bins
    data = PlotService(bins=bins).plot_data(instances, views, frequency)
    context.emit(ExperimentMapper.plot_rows(data)[args.section], data)


def _report(args: argparse.Namespace, context: RunContext) -> None:
    if args.diff:
        _diff(args, context)
    else:
        _plot(args, context)


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("report", parents=[parent], help="Per-word difference tables and plot data")
    mode = parser.add_mutually_exclusive_group(required=True)
    mode.add_argument("--diff", nargs=2, metavar=("BASE", "OTHER"), help="Groups compared word by word")
    mode.add_argument("--plot", action="store_true", help="Histogram and frequency scatter data")
    parser.add_argument("--frequency", required=True, metavar="NAME", help="Frequency resource for log-frequency")
    parser.add_argument("--view", nargs="+", default=[], metavar="GROUP", help="Groups plotted (with --plot)")
    parser.add_argument("--bins", type=int, help="Histogram bins over [0, 1]")
    parser.add_argument("--section", choices=SECTIONS, default="scatter", help="Plot section printed as TSV")
    parser.set_defaults(handler=_report)
