"""
Lexical resource DTOs for the lexical complexity toolkit.

This module contains Pydantic models for corpus frequency tables, learner
level lists, familiarity norms and precomputed per-instance features.
"""

from typing import Dict, Optional, Any

from pydantic import Field, model_validator

from datalayer.model.lcp_models import LexicalUnit, ResourceKind
from .dataset_dto import BaseDTO


# ============================================================================
# Frequency Table DTOs
# ============================================================================

class FrequencyTable(BaseDTO):
    """
    Word (or character) counts with the corpus totals used for smoothing.

    token_total and type_total default to the sum and the number of stored
    counts; published lists that truncate the tail override them.
    """
    counts: Dict[str, int] = Field(default_factory=dict)
    token_total: int = Field(..., ge=1)
    type_total: int = Field(..., ge=1)
    unit: LexicalUnit = LexicalUnit.WORD_SURFACE

    @model_validator(mode="before")
    @classmethod
    def _default_totals(cls, data: Any) -> Any:
        if isinstance(data, dict):
            counts = data.get("counts") or {}
            data = dict(data)
            if data.get("token_total") is None:
                data["token_total"] = sum(counts.values())
            if data.get("type_total") is None:
                data["type_total"] = len(counts)
        return data

    @model_validator(mode="after")
    def _check_counts(self) -> "FrequencyTable":
        for word, count in self.counts.items():
            if count < 1:
                raise ValueError(f"count of '{word}' must be at least 1, got {count}")
        if self.counts and max(self.counts.values()) > self.token_total:
            raise ValueError(f"token total {self.token_total} is below a stored count")
        if self.token_total < self.type_total:
            raise ValueError(
                f"token total {self.token_total} is below type total {self.type_total}"
            )
        return self

    def count(self, item: str) -> int:
        """Raw count, 0 for unseen items."""
        return self.counts.get(item, 0)

    def __contains__(self, item: str) -> bool:
        return item in self.counts

    def stats(self) -> Dict[str, Any]:
        """Summary used by `freq build`."""
        return {
            "unit": self.unit.value,
            "entries": len(self.counts),
            "tokens": self.token_total,
            "types": self.type_total,
        }


# ============================================================================
# Word List DTOs
# ============================================================================

class LevelTable(BaseDTO):
    """Pedagogical levels 1..L keyed by lemma; unlisted lemmas get L + 1."""
    levels: Dict[str, int]
    max_level: Optional[int] = Field(None, ge=1)

    @model_validator(mode="before")
    @classmethod
    def _default_max_level(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("max_level") is None:
            levels = data.get("levels") or {}
            if not levels:
                raise ValueError("level table is empty")
            data = dict(data, max_level=max(levels.values()))
        return data

    @model_validator(mode="after")
    def _check_levels(self) -> "LevelTable":
        for lemma, level in self.levels.items():
            if not 1 <= level <= self.max_level:
                raise ValueError(f"level of '{lemma}' must lie in [1, {self.max_level}], got {level}")
        return self

    @property
    def dummy(self) -> int:
        return self.max_level + 1

    def __contains__(self, lemma: str) -> bool:
        return lemma in self.levels


class FamiliarityTable(BaseDTO):
    """Familiarity ratings keyed by lemma; unlisted lemmas get the minimum."""
    familiarity: Dict[str, float] = Field(..., min_length=1)

    @property
    def floor(self) -> float:
        return min(self.familiarity.values())

    def __contains__(self, lemma: str) -> bool:
        return lemma in self.familiarity


class ExternalFeature(BaseDTO):
    """Precomputed per-instance values, e.g. the output of another model."""
    name: str = Field(..., min_length=1)
    values: Dict[str, float]

    def __contains__(self, instance_id: str) -> bool:
        return instance_id in self.values


# ============================================================================
# Feature Spec DTOs
# ============================================================================

DEFAULT_KEYS = {
    ResourceKind.FREQ: LexicalUnit.WORD_SURFACE,
    ResourceKind.CHAR_FREQ: LexicalUnit.CHARACTER,
    ResourceKind.LEVEL: LexicalUnit.LEMMA,
    ResourceKind.FAMILIARITY: LexicalUnit.LEMMA,
}


class ResourceRef(BaseDTO):
    """A named lexical resource file and how to look it up."""
    name: str = Field(..., min_length=1)
    kind: ResourceKind
    key: Optional[LexicalUnit] = Field(None, description="Lookup key for word resources")
    path: str = Field(..., min_length=1)

    @model_validator(mode="before")
    @classmethod
    def _default_key(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("key") is None:
            data = dict(data, key=DEFAULT_KEYS.get(ResourceKind(data.get("kind"))))
        return data

    @classmethod
    def parse(cls, name: str, spec: str) -> "ResourceRef":
        """Parse 'kind:key:path' (key may be empty)."""
        parts = spec.split(":", 2)
        if len(parts) != 3:
            raise ValueError(f"resource '{name}' must be given as kind:key:path, got '{spec}'")
        kind, key, path = parts
        return cls(name=name, kind=ResourceKind(kind), key=LexicalUnit(key) if key else None, path=path)
