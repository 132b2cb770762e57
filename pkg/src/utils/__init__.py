"""
Utils module for the lexical complexity toolkit.

This module provides the exception hierarchy and the computational helpers
(rating aggregation, lexical features, statistics, regression, metrics and
output rendering) used by the services.
"""

from .exceptions import (
    LexComplexityException,
    ValidationError,
    DatasetFormatError,
    NotFoundError,
    DuplicateError,
    UndefinedCorrelationError,
    SingularSystemError,
    ConvergenceError,
    AnnotatorMismatchError,
    ConfigError,
)


__all__ = [
    # Exceptions
    "LexComplexityException",
    "ValidationError",
    "DatasetFormatError",
    "NotFoundError",
    "DuplicateError",
    "UndefinedCorrelationError",
    "SingularSystemError",
    "ConvergenceError",
    "AnnotatorMismatchError",
    "ConfigError",
]
