"""
Annotator profile repository for the lexical complexity toolkit.

This module reads and writes the profiles TSV, whose header names the
AnnotatorProfile fields.
"""

import logging
from typing import List

import pandas as pd

from datalayer.mapper.dataset_mapper import ProfileMapper
from datalayer.model.dto.dataset_dto import AnnotatorProfile
from utils.exceptions import DatasetFormatError
from ._base_repository import TsvRepository, unique_or_raise

logger = logging.getLogger(__name__)


class ProfileRepository(TsvRepository[List[AnnotatorProfile]]):
    """Repository for annotator profiles."""

    columns = ProfileMapper.COLUMNS

    def load(self, path: str) -> List[AnnotatorProfile]:
        frame, first_line = self.read_frame(path)
        if "annotator_id" not in frame.columns:
            raise DatasetFormatError("missing header column", path=path, line=1, column="annotator_id")
        unknown = [column for column in frame.columns if column not in self.columns]
        if unknown:
            raise DatasetFormatError("unknown header column", path=path, line=1, column=unknown[0])

        profiles = [
            self.parse_row(path, line, lambda: ProfileMapper.to_dto(row))
            for line, row in self.iter_rows(path, frame, first_line)
        ]
        unique_or_raise(
            path,
            [(first_line + i, profile.annotator_id) for i, profile in enumerate(profiles)],
            "annotator id",
        )
        logger.info("Loaded %d annotator profiles from %s", len(profiles), path)
        return profiles

    def save(self, entity: List[AnnotatorProfile], path: str) -> None:
        frame = pd.DataFrame([ProfileMapper.to_row(p) for p in entity], columns=list(self.columns))
        self.write_frame(frame, path)
