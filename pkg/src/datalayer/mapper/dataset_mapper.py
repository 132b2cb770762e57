"""
Mappers for dataset entities (Instance, AnnotatorProfile, RatingMatrix).

This module provides conversion functions between TSV rows (dicts of
strings) and Pydantic DTOs for the dataset files.
"""

import math
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..model.lcp_models import Origin
from ..model.dto.dataset_dto import Instance, AnnotatorProfile, RatingMatrix


# Labels used by the published per-word tables
ORIGIN_ALIASES = {
    "Ch.+Ja.": Origin.MIXED,
    "Ch. + Ja.": Origin.MIXED,
    "English": Origin.OTHER,
}


def format_float(value: Optional[float]) -> str:
    """Shortest round-trip text of a float; empty for missing values."""
    if value is None or math.isnan(value):
        return ""
    return repr(float(value))


# ============================================================================
# Instance Mapper
# ============================================================================

class InstanceMapper:
    """Mapper between instances TSV rows and Instance DTOs."""

    COLUMNS = ("id", "target", "tokens", "lemmas", "origin", "pos", "split")

    @staticmethod
    def to_dto(row: Dict[str, str]) -> Instance:
        """
        Convert an instances TSV row to an Instance.

        Args:
            row: Mapping of column name to cell text

        Returns:
            Instance
        """
        origin = row["origin"].strip()
        return Instance(
            id=row["id"],
            target=row["target"],
            tokens=tuple(row["tokens"].split()),
            lemmas=tuple(row["lemmas"].split()),
            origin=ORIGIN_ALIASES.get(origin, origin),
            pos=row["pos"],
            split=row["split"].strip(),
        )

    @staticmethod
    def to_row(instance: Instance) -> Dict[str, str]:
        return {
            "id": instance.id,
            "target": instance.target,
            "tokens": " ".join(instance.tokens),
            "lemmas": " ".join(instance.lemmas),
            "origin": instance.origin.value,
            "pos": instance.pos,
            "split": instance.split.value,
        }

    @staticmethod
    def to_row_list(instances: Sequence[Instance]) -> List[Dict[str, str]]:
        return [InstanceMapper.to_row(instance) for instance in instances]


# ============================================================================
# Profile Mapper
# ============================================================================

class ProfileMapper:
    """Mapper between profiles TSV rows and AnnotatorProfile DTOs."""

    COLUMNS = tuple(AnnotatorProfile.model_fields)

    @staticmethod
    def to_dto(row: Dict[str, str]) -> AnnotatorProfile:
        """
        Convert a profiles TSV row to an AnnotatorProfile.

        Native languages are separated by ';'. Empty numeric cells take the
        field default.
        """
        values = {key: value for key, value in row.items() if value != "" and key in ProfileMapper.COLUMNS}
        if "native_languages" in values:
            values["native_languages"] = tuple(
                language.strip() for language in values["native_languages"].split(";") if language.strip()
            )
        return AnnotatorProfile(**values)

    @staticmethod
    def to_row(profile: AnnotatorProfile) -> Dict[str, str]:
        row = {key: str(value) for key, value in profile.model_dump().items()}
        row["native_languages"] = ";".join(profile.native_languages)
        return row


# ============================================================================
# Rating Mapper
# ============================================================================

class RatingMapper:
    """Mapper between ratings TSV columns and RatingMatrix DTOs."""

    @staticmethod
    def to_dto(
        annotator_ids: Sequence[str],
        instance_ids: Sequence[str],
        columns: Sequence[Sequence[Optional[float]]],
        strict_grid: bool = False,
    ) -> RatingMatrix:
        """
        Build a matrix from per-instance rows of the ratings file.

        Args:
            annotator_ids: Header columns after 'id'
            instance_ids: First column, in file order
            columns: One list of ratings (None = missing) per instance
            strict_grid: Enforce the five-point rating grid

        Returns:
            RatingMatrix (annotators x instances)
        """
        values = np.array(
            [[np.nan if v is None else v for v in row] for row in columns], dtype=float
        ).reshape(len(instance_ids), len(annotator_ids))
        return RatingMatrix(
            annotator_ids=tuple(annotator_ids),
            instance_ids=tuple(instance_ids),
            values=values.T,
            strict_grid=strict_grid,
        )

    @staticmethod
    def to_rows(matrix: RatingMatrix) -> List[Dict[str, str]]:
        """One row per instance: id, then one cell per annotator."""
        rows = []
        for j, instance_id in enumerate(matrix.instance_ids):
            row = {"id": instance_id}
            for i, annotator_id in enumerate(matrix.annotator_ids):
                row[annotator_id] = format_float(matrix.values[i, j])
            rows.append(row)
        return rows
