"""
agreement command: Krippendorff's alpha and mean pairwise PCC per annotator group.
"""

import argparse
from itertools import combinations
from typing import List, Sequence

from datalayer.mapper.report_mapper import AnalysisMapper
from datalayer.model.lcp_models import Split
from services.analysis_service import AnalysisService
from services.dataset_service import DatasetService
from commands.context import RunContext
from utils.exceptions import ConfigError
from utils.rating_helpers import select_instances


def expand_unions(specs: Sequence[str], names: Sequence[str]) -> List[List[str]]:
    """
    Expand --union values into member lists.

    "A+B" names the members, "all-pairs" adds every pair of groups and
    "all" adds the union of every group.
    """
    unions: List[List[str]] = []
    for spec in specs:
        spec = spec.strip().lower()
        if spec == "all-pairs":
            unions.extend([list(pair) for pair in combinations(names, 2)])
        elif spec == "all":
            unions.append(list(names))
        else:
            members = [member.strip() for member in spec.split("+") if member.strip()]
            if len(members) < 2:
                raise ConfigError(f"--union expects A+B, all-pairs or all, got '{spec}'")
            unions.append(members)
    return unions


def _agreement(args: argparse.Namespace, context: RunContext) -> None:
    matrices = context.group_matrices([name.lower() for name in args.groups or ()])
    if args.split != "all":
        split_ids = [i.id for i in DatasetService.split_instances(context.instances(), Split(args.split))]
        matrices = {
            name: select_instances(matrix, [i for i in split_ids if i in matrix.instance_ids])
            for name, matrix in matrices.items()
        }
    rows = AnalysisService(context.features, context.config).agreement_table(
        matrices, expand_unions(args.union, list(matrices))
    )
    context.emit(AnalysisMapper.agreement_rows(rows), rows, columns=AnalysisMapper.AGREEMENT_COLUMNS)


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("agreement", parents=[parent], help="Inter-annotator agreement per group")
    parser.add_argument(
        "--only", dest="groups", nargs="+", metavar="NAME",
        help="Restrict to these configured groups (default: all)",
    )
    parser.add_argument(
        "--union", action="append", default=[], metavar="SPEC",
        help="A+B, all-pairs or all (repeatable)",
    )
    parser.add_argument("--split", choices=["all", Split.TRIAL.value, Split.TEST.value], default="all")
    parser.set_defaults(handler=_agreement)
