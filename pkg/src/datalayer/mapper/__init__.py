"""
Mappers package.

This package contains mapper classes for converting between TSV rows and
Pydantic DTOs, and for flattening results into output rows.
"""

from .dataset_mapper import (
    InstanceMapper,
    ProfileMapper,
    RatingMapper,
)

from .report_mapper import (
    AnalysisMapper,
    ExperimentMapper,
)

__all__ = [
    # Dataset mappers
    "InstanceMapper",
    "ProfileMapper",
    "RatingMapper",

    # Report mappers
    "AnalysisMapper",
    "ExperimentMapper",
]
