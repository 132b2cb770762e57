import json
import logging
import os
from typing import Annotated, Union

from pydantic import Field, TypeAdapter, ValidationError as PydanticValidationError

from datalayer.model.dto.model_dto import RidgeModel, LogisticModel
from utils.exceptions import DatasetFormatError, NotFoundError
from ._repository_abc import RepositoryABC

logger = logging.getLogger(__name__)

FittedModel = Annotated[Union[RidgeModel, LogisticModel], Field(discriminator="kind")]


class ModelRepository(RepositoryABC[Union[RidgeModel, LogisticModel]]):
    """
    Fitted models as JSON documents.

    The document is written with the json module, whose float text is the
    shortest round-trip representation, so loading restores every
    parameter bit for bit.
    """

    _adapter = TypeAdapter(FittedModel)

    def exists(self, path: str) -> bool:
        return os.path.isfile(path)

    def load(self, path: str) -> Union[RidgeModel, LogisticModel]:
        if not self.exists(path):
            raise NotFoundError(f"model file not found: {path}", resource="model")
        with open(path, encoding="utf-8") as handle:
            try:
                document = json.load(handle)
            except json.JSONDecodeError as exc:
                raise DatasetFormatError(exc.msg, path=path, line=exc.lineno) from exc
        try:
            model = self._adapter.validate_python(document)
        except PydanticValidationError as exc:
            raise DatasetFormatError(exc.errors()[0]["msg"], path=path) from exc
        logger.debug("Loaded %s model from %s", model.kind, path)
        return model

    def save(self, entity: Union[RidgeModel, LogisticModel], path: str) -> None:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            json.dump(entity.model_dump(mode="python"), handle, indent=2, ensure_ascii=False)
            handle.write("\n")
        logger.info("Saved %s model to %s", entity.kind, path)
