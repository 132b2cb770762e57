"""
Dataset DTOs for the lexical complexity toolkit.

This module contains Pydantic models for annotated instances, annotator
profiles, rating matrices and labeled views derived from them.
"""

from typing import Optional, Dict, List, Tuple, Union, Any

import numpy as np
from pydantic import BaseModel, Field, ConfigDict, StrictBool, field_validator, model_validator

from datalayer.model.lcp_models import Origin, Split, Provenance


RATING_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


# ============================================================================
# Base DTOs
# ============================================================================

class BaseDTO(BaseModel):
    """Base DTO with common configuration."""
    model_config = ConfigDict(frozen=True, str_strip_whitespace=True)


class ArrayDTO(BaseModel):
    """Base DTO for models holding numpy arrays."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


# ============================================================================
# Instance DTOs
# ============================================================================

class Instance(BaseDTO):
    """One target expression with its token decomposition."""
    id: str = Field(..., min_length=1, description="Unique instance id")
    target: str = Field(..., min_length=1, description="Surface string of the target")
    tokens: Tuple[str, ...] = Field(..., min_length=1, description="Content tokens")
    lemmas: Tuple[str, ...] = Field(..., min_length=1, description="Lemmas aligned to tokens")
    origin: Origin = Field(..., description="Word origin")
    pos: str = Field(..., min_length=1, description="Part-of-speech category")
    split: Split = Field(..., description="Dataset split")

    @model_validator(mode="after")
    def _check_alignment(self) -> "Instance":
        if len(self.tokens) != len(self.lemmas):
            raise ValueError(
                f"instance {self.id}: {len(self.tokens)} tokens but {len(self.lemmas)} lemmas"
            )
        return self

    @property
    def characters(self) -> Tuple[str, ...]:
        """Code points of the target, in order."""
        return tuple(self.target)


class AnnotatorProfile(BaseDTO):
    """Demographic profile of one annotator."""
    annotator_id: str = Field(..., min_length=1)
    native_languages: Tuple[str, ...] = Field(default=())
    jlpt_level: str = Field(default="")
    years_in_japan: float = Field(default=0.0, ge=0)
    reading_hours_per_week: float = Field(default=0.0, ge=0)
    age_years: float = Field(default=0.0, ge=0)
    education_years: float = Field(default=0.0, ge=0)


# ============================================================================
# Rating DTOs
# ============================================================================

class RatingMatrix(ArrayDTO):
    """
    Annotators x instances complexity ratings.

    Missing ratings are stored as NaN. The value array is read-only.
    """
    annotator_ids: Tuple[str, ...]
    instance_ids: Tuple[str, ...]
    values: np.ndarray
    strict_grid: bool = False

    @field_validator("values", mode="before")
    @classmethod
    def _to_array(cls, value: Any) -> np.ndarray:
        array = np.array(
            [[np.nan if v is None else v for v in row] for row in value]
            if not isinstance(value, np.ndarray) else value,
            dtype=float,
        )
        if array.ndim == 1 and array.size == 0:
            array = array.reshape(0, 0)
        array = array.copy()
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def _check_matrix(self) -> "RatingMatrix":
        if not self.annotator_ids:
            raise ValueError("no annotators")
        if not self.instance_ids:
            raise ValueError("no instances")
        if len(set(self.annotator_ids)) != len(self.annotator_ids):
            raise ValueError("duplicate annotator id")
        if len(set(self.instance_ids)) != len(self.instance_ids):
            raise ValueError("duplicate instance id")
        if self.values.shape != (len(self.annotator_ids), len(self.instance_ids)):
            raise ValueError(
                f"values shape {self.values.shape} does not match "
                f"{len(self.annotator_ids)} annotators x {len(self.instance_ids)} instances"
            )
        present = ~np.isnan(self.values)
        if np.any(np.isinf(self.values)):
            raise ValueError("ratings must be finite")
        if np.any((self.values[present] < 0.0) | (self.values[present] > 1.0)):
            raise ValueError("ratings must lie in [0, 1]")
        empty = np.flatnonzero(~present.any(axis=0))
        if empty.size:
            raise ValueError(f"instance {self.instance_ids[empty[0]]} has no ratings")
        if self.strict_grid and not np.all(np.isin(self.values[present], RATING_GRID)):
            raise ValueError("ratings must lie on the grid {0, 0.25, 0.5, 0.75, 1}")
        return self

    @property
    def present(self) -> np.ndarray:
        """Boolean mask of present ratings."""
        return ~np.isnan(self.values)

    @property
    def n_annotators(self) -> int:
        return len(self.annotator_ids)

    @property
    def n_instances(self) -> int:
        return len(self.instance_ids)

    def row(self, annotator_id: str) -> np.ndarray:
        """Ratings of one annotator (NaN where missing)."""
        try:
            index = self.annotator_ids.index(annotator_id)
        except ValueError:
            raise KeyError(annotator_id) from None
        return self.values[index]


# ============================================================================
# Labeled View DTOs
# ============================================================================

class LabeledView(BaseDTO):
    """Targets for a list of instances: complexity values or binary labels."""
    instance_ids: Tuple[str, ...]
    targets: Tuple[Union[StrictBool, float], ...]
    provenance: Provenance
    annotator_id: Optional[str] = Field(None, description="Set for individual views")

    @model_validator(mode="after")
    def _check_view(self) -> "LabeledView":
        if len(self.instance_ids) != len(self.targets):
            raise ValueError(
                f"{len(self.targets)} targets for {len(self.instance_ids)} instances"
            )
        for target in self.targets:
            if not isinstance(target, bool) and not 0.0 <= target <= 1.0:
                raise ValueError(f"LCP target {target} outside [0, 1]")
        if (self.provenance == Provenance.INDIVIDUAL) != (self.annotator_id is not None):
            raise ValueError("annotator_id is required exactly for individual views")
        return self

    @property
    def label(self) -> str:
        """Provenance rendered as e.g. individual(A03)."""
        if self.provenance == Provenance.INDIVIDUAL:
            return f"individual({self.annotator_id})"
        return self.provenance.value

    @property
    def is_binary(self) -> bool:
        return bool(self.targets) and all(isinstance(t, bool) for t in self.targets)

    def as_array(self) -> np.ndarray:
        """Targets as a numpy array (bool for CWI views, float for LCP views)."""
        return np.array(self.targets, dtype=bool if self.is_binary else float)

    def as_dict(self) -> Dict[str, Union[bool, float]]:
        return dict(zip(self.instance_ids, self.targets))


# ============================================================================
# Composition DTOs
# ============================================================================

class CompositionRow(BaseDTO):
    """Share of one origin or POS category per split, in percent."""
    category: str = Field(..., description="'Word Origin' or 'Part of Speech'")
    label: str
    percentages: Dict[str, Optional[float]]


class CompositionTable(BaseDTO):
    """Composition of a dataset by word origin and part of speech."""
    splits: List[str]
    rows: List[CompositionRow]


class ProfileSummaryRow(BaseDTO):
    """Annotator count of one profile category, with mean and std for numeric fields."""
    category: str
    label: str
    n: int = Field(..., ge=0)
    mean: Optional[float] = None
    std: Optional[float] = None
