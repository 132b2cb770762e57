import logging
from typing import List

import pandas as pd

from datalayer.mapper.dataset_mapper import InstanceMapper
from datalayer.model.dto.dataset_dto import Instance
from utils.exceptions import DatasetFormatError
from ._base_repository import TsvRepository, unique_or_raise

logger = logging.getLogger(__name__)


class InstanceRepository(TsvRepository[List[Instance]]):
    """Instances TSV: id, target, tokens, lemmas, origin, pos, split"""

    columns = InstanceMapper.COLUMNS

    def load(self, path: str) -> List[Instance]:
        frame, first_line = self.read_frame(path)
        missing = [column for column in self.columns if column not in frame.columns]
        if missing:
            raise DatasetFormatError("missing header column", path=path, line=1, column=missing[0])

        instances = []
        for line, row in self.iter_rows(path, frame, first_line):
            instances.append(self.parse_row(path, line, lambda: InstanceMapper.to_dto(row)))
        if not instances:
            raise DatasetFormatError("no instances", path=path)
        unique_or_raise(
            path,
            [(first_line + i, instance.id) for i, instance in enumerate(instances)],
            "instance id",
        )
        logger.info("Loaded %d instances from %s", len(instances), path)
        return instances

    def save(self, entity: List[Instance], path: str) -> None:
        frame = pd.DataFrame(InstanceMapper.to_row_list(entity), columns=list(self.columns))
        self.write_frame(frame, path)
