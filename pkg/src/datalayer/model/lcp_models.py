"""
Enumerations for the lexical complexity toolkit.

This module contains the closed vocabularies shared by the DTO, repository
and service layers.
"""

from enum import Enum as PyEnum


# ============================================================================
# Dataset Enums
# ============================================================================

class Origin(str, PyEnum):
    """Word origin of a target expression."""
    JAPANESE = "Japanese"
    CHINESE = "Chinese"
    MIXED = "Mixed"
    OTHER = "Other"


class Split(str, PyEnum):
    """Dataset split an instance belongs to."""
    TRIAL = "trial"
    TEST = "test"


class Provenance(str, PyEnum):
    """Where the targets of a labeled view come from."""
    GROUP_MEAN = "group_mean"
    GROUP_MAJORITY = "group_majority"
    GROUP_MEAN_THRESHOLD = "group_mean_threshold"
    INDIVIDUAL = "individual"


# ============================================================================
# Lexical Resource Enums
# ============================================================================

class LexicalUnit(str, PyEnum):
    """Lookup key of a frequency table."""
    WORD_SURFACE = "surface"
    LEMMA = "lemma"
    CHARACTER = "character"


class ResourceKind(str, PyEnum):
    """Kinds of lexical resources a feature can be computed from."""
    FREQ = "freq"
    CHAR_FREQ = "char_freq"
    LEVEL = "level"
    FAMILIARITY = "familiarity"
    EXTERNAL = "external"


# ============================================================================
# Experiment Enums
# ============================================================================

class Task(str, PyEnum):
    """Prediction task of an experiment."""
    LCP = "LCP"
    CWI = "CWI"
    LCP_CWI = "LCP_CWI"


class Source(str, PyEnum):
    """Training or evaluation target source."""
    GROUP = "group"
    INDIVIDUAL = "individual"


class GroupLabelRule(str, PyEnum):
    """How binary group gold labels are derived from a rating matrix."""
    MAJORITY = "majority"
    MEAN_THRESHOLD = "mean_threshold"


class ClassWeight(str, PyEnum):
    """Class weighting modes for logistic regression."""
    BALANCED = "balanced"
    NONE = "none"


class OutputFormat(str, PyEnum):
    """Rendering format of command output."""
    TSV = "tsv"
    JSON = "json"
