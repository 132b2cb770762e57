"""
freq command: frequency table statistics and smoothed lookups.
"""

import argparse

from datalayer.model.lcp_models import LexicalUnit
from services.feature_service import FeatureService
from commands.context import RunContext


UNITS = [unit.value for unit in LexicalUnit]


def _build(args: argparse.Namespace, context: RunContext) -> None:
    stats = FeatureService.load_frequency_table(args.path, LexicalUnit(args.unit)).stats()
    context.emit([stats], stats, columns=("unit", "entries", "tokens", "types"))


def _lookup(args: argparse.Namespace, context: RunContext) -> None:
    table = FeatureService.load_frequency_table(args.path, LexicalUnit(args.unit))
    payload = [
        {"item": item, "count": count, "log_freq": log_freq}
        for item, count, log_freq in FeatureService.lookup(table, args.items)
    ]
    rows = [{**entry, "log_freq": f"{entry['log_freq']:.4f}"} for entry in payload]
    context.emit(rows, payload, columns=("item", "count", "log_freq"))


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("freq", parents=[parent], help="Frequency table statistics and lookups")
    actions = parser.add_subparsers(dest="freq_action", metavar="ACTION", required=True)

    build = actions.add_parser("build", parents=[parent], help="Print entry, token and type counts of a table")
    build.add_argument("path", help="Word-count TSV")
    build.add_argument("--unit", choices=UNITS, default=LexicalUnit.WORD_SURFACE.value)
    build.set_defaults(handler=_build)

    lookup = actions.add_parser("lookup", parents=[parent], help="Print smoothed log10 frequencies")
    lookup.add_argument("path", help="Word-count TSV")
    lookup.add_argument("items", nargs="+", metavar="ITEM")
    lookup.add_argument("--unit", choices=UNITS, default=LexicalUnit.WORD_SURFACE.value)
    lookup.set_defaults(handler=_lookup)
