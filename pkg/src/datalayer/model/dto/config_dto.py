"""
Run configuration DTO for the lexical complexity toolkit.

A RunConfig is read from a key-value file in dotenv syntax and then
overridden by command-line flags.
"""

import os
from typing import Optional, Dict, Mapping

from pydantic import Field, model_validator

from datalayer.model.lcp_models import OutputFormat
from .dataset_dto import BaseDTO
from .lexicon_dto import ResourceRef


GROUP_PREFIX = "GROUP_"
RESOURCE_PREFIX = "RESOURCE_"


class RunConfig(BaseDTO):
    """Paths and parameters of one CLI run."""
    instances: Optional[str] = None
    ratings: Optional[str] = None
    profiles: Optional[str] = None
    groups: Dict[str, str] = Field(default_factory=dict, description="group name -> ratings path")
    resources: Dict[str, ResourceRef] = Field(default_factory=dict)
    output_format: OutputFormat = OutputFormat.TSV
    out: Optional[str] = None
    seed: int = 0
    strict_grid: bool = False
    threshold: float = Field(0.375, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_paths(self) -> "RunConfig":
        paths = [self.instances, self.ratings, self.profiles, *self.groups.values()]
        paths += [resource.path for resource in self.resources.values()]
        for path in paths:
            if path is not None and not os.path.exists(path):
                raise ValueError(f"path does not exist: {path}")
        return self

    @staticmethod
    def entries_from_mapping(values: Mapping[str, Optional[str]]) -> Dict[str, object]:
        """
        Convert dotenv-style keys to RunConfig fields.

        Args:
            values: Mapping such as the result of dotenv_values()

        Returns:
            Field values suitable for RunConfig(**...)
        """
        entries: Dict[str, object] = {"groups": {}, "resources": {}}
        simple = {
            "INSTANCES": "instances",
            "RATINGS": "ratings",
            "PROFILES": "profiles",
            "FORMAT": "output_format",
            "OUT": "out",
            "SEED": "seed",
            "STRICT_GRID": "strict_grid",
            "THRESHOLD": "threshold",
        }
        for key, value in values.items():
            if value is None or value == "":
                continue
            upper = key.upper()
            if upper in simple:
                entries[simple[upper]] = value
            elif upper.startswith(GROUP_PREFIX):
                entries["groups"][upper[len(GROUP_PREFIX):].lower()] = value
            elif upper.startswith(RESOURCE_PREFIX):
                name = upper[len(RESOURCE_PREFIX):].lower()
                entries["resources"][name] = ResourceRef.parse(name, value)
            else:
                raise ValueError(f"unknown configuration key: {key}")
        return entries
