"""
Custom exceptions for the lexical complexity toolkit.

This module defines application-specific exceptions. Each carries the
process exit code the CLI reports for it.
"""

from typing import Optional, Any, Dict


class LexComplexityException(Exception):
    """Base exception for the toolkit."""

    def __init__(
        self,
        message: str,
        exit_code: int = 1,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.exit_code = exit_code
        self.details = details or {}
        super().__init__(self.message)


class ValidationError(LexComplexityException):
    """Raised when input values violate an operation's preconditions."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, exit_code=1, details=details)


class DatasetFormatError(ValidationError):
    """Raised when a data file does not conform to its TSV format."""

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        line: Optional[int] = None,
        column: Optional[str] = None
    ):
        details = {
            key: value
            for key, value in (("path", path), ("line", line), ("column", column))
            if value is not None
        }
        location = ""
        if path is not None:
            location = f"{path}"
            if line is not None:
                location += f":{line}"
            location += ": "
        if column is not None:
            message = f"{message} (column '{column}')"
        super().__init__(location + message, details=details)


class NotFoundError(LexComplexityException):
    """Raised when a requested item (annotator, resource, instance) is absent."""

    def __init__(self, message: str, resource: Optional[str] = None):
        details = {"resource": resource} if resource else {}
        super().__init__(message, exit_code=1, details=details)


class DuplicateError(ValidationError):
    """Raised when an identifier occurs more than once."""

    def __init__(self, message: str, field: Optional[str] = None):
        details = {"field": field} if field else {}
        super().__init__(message, details=details)


class UndefinedCorrelationError(ValidationError):
    """Raised when a correlation is undefined (constant input or too few values)."""

    def __init__(self, message: str = "Correlation is undefined for constant input"):
        super().__init__(message)


class SingularSystemError(LexComplexityException):
    """Raised when a closed-form fit meets a singular system."""

    def __init__(self, message: str = "Normal equations are singular"):
        super().__init__(message, exit_code=1)


class ConvergenceError(LexComplexityException):
    """Raised when an iterative fit does not converge."""

    def __init__(self, message: str, iterations: int):
        super().__init__(message, exit_code=1, details={"iterations": iterations})


class AnnotatorMismatchError(ValidationError):
    """Raised when two rating sources disagree on their annotator or instance sets."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details=details)


class ConfigError(LexComplexityException):
    """Raised for invalid run configuration or command usage."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, exit_code=2, details=details)
