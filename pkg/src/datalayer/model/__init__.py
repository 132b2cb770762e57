"""
Models package.

This package contains the enums of the lexical complexity toolkit; the
Pydantic DTOs live in the dto subpackage.
"""

from .lcp_models import (
    LexicalUnit,
    ResourceKind,
    Origin,
    Split,
    Provenance,
    Task,
    Source,
    GroupLabelRule,
    ClassWeight,
    OutputFormat,
)

__all__ = [
    "LexicalUnit",
    "ResourceKind",
    "Origin",
    "Split",
    "Provenance",
    "Task",
    "Source",
    "GroupLabelRule",
    "ClassWeight",
    "OutputFormat",
]
