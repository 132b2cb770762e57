import logging

import pandas as pd
from pydantic import ValidationError as PydanticValidationError

from datalayer.mapper.dataset_mapper import RatingMapper
from datalayer.model.dto.dataset_dto import RatingMatrix, RATING_GRID
from utils.exceptions import DatasetFormatError
from ._base_repository import TsvRepository, unique_or_raise, parse_float

logger = logging.getLogger(__name__)


class RatingRepository(TsvRepository[RatingMatrix]):
    """
    Ratings TSV: an 'id' column, then one column per annotator.

    Empty cells are missing ratings. Rows are instances, so the loaded
    matrix is the transpose of the file layout.
    """

    def __init__(self, strict_grid: bool = False):
        self.strict_grid = strict_grid

    def _read_header(self, path: str) -> list:
        # pandas renames duplicate header cells, so the header is checked as text
        if not self.exists(path):
            raise DatasetFormatError("file not found", path=path)
        with open(path, encoding="utf-8") as handle:
            header = handle.readline().rstrip("\r\n")
        if not header:
            raise DatasetFormatError("no annotators", path=path)
        names = header.split("\t")
        if names[0].strip() != "id":
            raise DatasetFormatError("first header column must be 'id'", path=path, line=1, column=names[0])
        unique_or_raise(path, [(1, name.strip()) for name in names[1:]], "annotator id")
        return [name.strip() for name in names]

    def load(self, path: str) -> RatingMatrix:
        header = self._read_header(path)
        annotator_ids = header[1:]
        if not annotator_ids:
            raise DatasetFormatError("no annotators", path=path)

        frame, first_line = self.read_frame(path)
        frame.columns = header
        instance_ids = []
        rows = []
        for line, row in self.iter_rows(path, frame, first_line):
            instance_ids.append(row["id"].strip())
            values = []
            for annotator_id in annotator_ids:
                value = parse_float(path, line, annotator_id, row[annotator_id].strip(), allow_empty=True)
                if value is not None:
                    if not 0.0 <= value <= 1.0:
                        raise DatasetFormatError(
                            f"rating {value} outside [0, 1]", path=path, line=line, column=annotator_id
                        )
                    if self.strict_grid and value not in RATING_GRID:
                        raise DatasetFormatError(
                            f"rating {value} is not on the grid {RATING_GRID}",
                            path=path, line=line, column=annotator_id,
                        )
                values.append(value)
            if all(value is None for value in values):
                raise DatasetFormatError(f"instance {row['id']} has no ratings", path=path, line=line)
            rows.append(values)

        if not instance_ids:
            raise DatasetFormatError("no instances", path=path)
        unique_or_raise(path, [(first_line + i, v) for i, v in enumerate(instance_ids)], "instance id")
        try:
            matrix = RatingMapper.to_dto(annotator_ids, instance_ids, rows, strict_grid=self.strict_grid)
        except PydanticValidationError as exc:
            raise DatasetFormatError(exc.errors()[0]["msg"], path=path) from exc
        logger.info(
            "Loaded %d annotators x %d instances from %s",
            matrix.n_annotators, matrix.n_instances, path,
        )
        return matrix

    def save(self, entity: RatingMatrix, path: str) -> None:
        frame = pd.DataFrame(RatingMapper.to_rows(entity), columns=["id", *entity.annotator_ids])
        self.write_frame(frame, path)
