"""
Run context for CLI commands.

This module merges the run configuration file with command-line flags and
provides commands with loaded datasets, annotator groups, lexical resources
and output rendering.
"""

import argparse
import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from dotenv import dotenv_values
from pydantic import ValidationError as PydanticValidationError

from config import Config
from datalayer.model.lcp_models import OutputFormat
from datalayer.model.dto.dataset_dto import Instance, RatingMatrix, LabeledView
from datalayer.model.dto.config_dto import RunConfig
from datalayer.model.dto.lexicon_dto import ResourceRef
from services.dataset_service import DatasetService
from services.feature_service import FeatureService
from utils.exceptions import ConfigError, ValidationError
from utils.rating_helpers import group_mean, select_instances
from utils.output_helpers import render, write_output


logger = logging.getLogger(__name__)


def _split_assignment(raw: str, flag: str) -> Tuple[str, str]:
    name, separator, value = raw.partition("=")
    if not separator or not name.strip() or not value.strip():
        raise ConfigError(f"{flag} expects NAME=VALUE, got '{raw}'")
    return name.strip().lower(), value.strip()


def _pydantic_message(exc: PydanticValidationError) -> str:
    error = exc.errors()[0]
    location = ".".join(str(part) for part in error.get("loc", ()))
    return f"{location}: {error['msg']}" if location else error["msg"]


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """
    Read the --config file and apply flag overrides.

    Raises:
        ConfigError: If the file or a flag is invalid or a path does not exist
    """
    config = Config()
    entries: Dict[str, Any] = {"groups": {}, "resources": {}}
    if getattr(args, "config", None):
        values = dotenv_values(args.config)
        if not values:
            raise ConfigError(f"configuration file is empty or unreadable: {args.config}")
        try:
            entries = RunConfig.entries_from_mapping(values)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    entries.setdefault("output_format", config.output_format)
    entries.setdefault("seed", config.seed)
    entries.setdefault("threshold", config.threshold)

    overrides = {
        "instances": getattr(args, "instances", None),
        "ratings": getattr(args, "ratings", None),
        "profiles": getattr(args, "profiles", None),
        "output_format": getattr(args, "format", None),
        "out": getattr(args, "out", None),
        "seed": getattr(args, "seed", None),
        "threshold": getattr(args, "threshold", None),
    }
    entries.update({key: value for key, value in overrides.items() if value is not None})
    if getattr(args, "strict_grid", False):
        entries["strict_grid"] = True

    for raw in getattr(args, "group", None) or []:
        name, path = _split_assignment(raw, "--group")
        entries["groups"][name] = path
    for raw in getattr(args, "resource", None) or []:
        name, spec = _split_assignment(raw, "--resource")
        try:
            entries["resources"][name] = ResourceRef.parse(name, spec)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    try:
        return RunConfig(**entries)
    except PydanticValidationError as exc:
        raise ConfigError(_pydantic_message(exc)) from exc


class RunContext:
    """Everything a command needs for one run."""

    def __init__(self, run_config: RunConfig, config: Optional[Config] = None):
        self.run_config = run_config
        self.config = config or Config()
        self.datasets = DatasetService(strict_grid=run_config.strict_grid)
        self.features = FeatureService(run_config.resources)
        self._instances: Optional[List[Instance]] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunContext":
        return cls(build_run_config(args))

    # ========================================================================
    # Data Access
    # ========================================================================

    def instances(self) -> List[Instance]:
        if self._instances is None:
            if not self.run_config.instances:
                raise ConfigError("an instances file is required (--instances or INSTANCES)")
            self._instances = self.datasets.instance_repo.load(self.run_config.instances)
        return self._instances

    def dataset(self) -> Tuple[List[Instance], RatingMatrix]:
        """Instances with the main ratings file."""
        if not self.run_config.instances or not self.run_config.ratings:
            raise ConfigError("the dataset needs an instances and a ratings file (--instances, --ratings)")
        instances, matrix = self.datasets.load_dataset(self.run_config.instances, self.run_config.ratings)
        self._instances = instances
        return instances, matrix

    def group(self, name: str) -> Tuple[List[Instance], RatingMatrix]:
        """A named annotator group over the instances it rated."""
        groups = self.run_config.groups
        if name not in groups:
            known = ", ".join(sorted(groups)) or "none"
            raise ConfigError(f"unknown group '{name}' (configured: {known})")
        return self.datasets.load_group(groups[name], self.instances())

    def group_views(self, names: Sequence[str]) -> Tuple[List[Instance], Dict[str, LabeledView]]:
        """
        Group-mean complexity views of named groups over the instances all of them rated.

        Returns:
            (shared instances in the first group's order, group name -> view)

        Raises:
            ValidationError: If the groups share no instance
        """
        loaded = {name: self.group(name) for name in names}
        shared = set.intersection(*(set(matrix.instance_ids) for _, matrix in loaded.values()))
        first_instances = loaded[names[0]][0]
        instances = [instance for instance in first_instances if instance.id in shared]
        if not instances:
            raise ValidationError(f"groups {', '.join(names)} share no instance")
        ids = [instance.id for instance in instances]
        views = {name: group_mean(select_instances(matrix, ids)) for name, (_, matrix) in loaded.items()}
        logger.info(f"Groups {', '.join(names)} share {len(ids)} instances")
        return instances, views

    def group_matrices(self, names: Optional[Sequence[str]] = None) -> Dict[str, RatingMatrix]:
        """Rating matrices of the named groups (all configured groups by default)."""
        names = list(names) if names else list(self.run_config.groups)
        if not names:
            raise ConfigError("at least one annotator group is required (--group NAME=PATH)")
        groups = self.run_config.groups
        missing = [name for name in names if name not in groups]
        if missing:
            raise ConfigError(f"unknown group '{missing[0]}'")
        return {name: self.datasets.rating_repo.load(groups[name]) for name in names}

    def feature_names(self, requested: Optional[Sequence[str]]) -> List[str]:
        names = list(requested) if requested else self.features.names
        if not names:
            raise ConfigError("no lexical resources configured (--resource NAME=kind:key:path)")
        return names

    # ========================================================================
    # Output
    # ========================================================================

    def emit(self, rows: Sequence[Mapping[str, Any]], payload: Any, columns: Optional[Sequence[str]] = None) -> None:
        text = render(rows, payload, OutputFormat(self.run_config.output_format), columns)
        write_output(text, self.run_config.out)
