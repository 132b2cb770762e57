"""
Feature service for the lexical complexity toolkit.

This module keeps a registry of named lexical resources, loads them on
first use and turns them into per-instance feature columns.
"""

import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from datalayer.model.lcp_models import LexicalUnit, ResourceKind
from datalayer.model.dto.dataset_dto import Instance
from datalayer.model.dto.lexicon_dto import (
    FrequencyTable, LevelTable, FamiliarityTable, ExternalFeature, ResourceRef
)
from datalayer.repository.lexicon_repository import (
    FrequencyTableRepository,
    LevelTableRepository,
    FamiliarityTableRepository,
    ExternalFeatureRepository,
)
from utils.exceptions import NotFoundError, ValidationError
from utils.lexical_helpers import (
    Resource,
    smoothed_log_freq,
    sequence_log_freq,
    char_log_freq,
    level_feature,
    familiarity_feature,
    lookup_units,
    coverage_mask,
)


logger = logging.getLogger(__name__)


def _kind_of(resource: Resource) -> ResourceKind:
    if isinstance(resource, FrequencyTable):
        return ResourceKind.CHAR_FREQ if resource.unit == LexicalUnit.CHARACTER else ResourceKind.FREQ
    if isinstance(resource, LevelTable):
        return ResourceKind.LEVEL
    if isinstance(resource, FamiliarityTable):
        return ResourceKind.FAMILIARITY
    return ResourceKind.EXTERNAL


class FeatureService:
    """Service for lexical resources and feature matrices."""

    def __init__(self, resources: Optional[Mapping[str, ResourceRef]] = None):
        self.refs: Dict[str, ResourceRef] = dict(resources or {})
        self._loaded: Dict[str, Resource] = {}

    def register(self, name: str, resource: Resource) -> None:
        """Register an in-memory resource under a feature name."""
        self._loaded[name] = resource

    @property
    def names(self) -> List[str]:
        return sorted(set(self.refs) | set(self._loaded))

    def resource(self, name: str) -> Resource:
        """
        Get a resource by name, loading it on first use.

        Raises:
            NotFoundError: If no resource of that name is configured
        """
        if name in self._loaded:
            return self._loaded[name]
        if name not in self.refs:
            raise NotFoundError(f"unknown feature '{name}'", resource="feature")

        ref = self.refs[name]
        if ref.kind == ResourceKind.FREQ:
            resource = FrequencyTableRepository(unit=ref.key or LexicalUnit.WORD_SURFACE).load(ref.path)
        elif ref.kind == ResourceKind.CHAR_FREQ:
            resource = FrequencyTableRepository(unit=LexicalUnit.CHARACTER).load(ref.path)
        elif ref.kind == ResourceKind.LEVEL:
            resource = LevelTableRepository().load(ref.path)
        elif ref.kind == ResourceKind.FAMILIARITY:
            resource = FamiliarityTableRepository().load(ref.path)
        else:
            resource = ExternalFeatureRepository(name).load(ref.path)
        self._loaded[name] = resource
        return resource

    def kind(self, name: str) -> ResourceKind:
        return _kind_of(self.resource(name))

    def feature_values(self, name: str, instances: Sequence[Instance]) -> List[float]:
        """
        One scalar per instance with missing-word substitution applied.

        Raises:
            NotFoundError: If an external feature lacks an instance
        """
        resource = self.resource(name)
        if isinstance(resource, FrequencyTable):
            if resource.unit == LexicalUnit.CHARACTER:
                return [char_log_freq(resource, instance.target) for instance in instances]
            return [sequence_log_freq(resource, lookup_units(instance, resource.unit)) for instance in instances]
        if isinstance(resource, LevelTable):
            return [float(level_feature(resource, instance.lemmas)) for instance in instances]
        if isinstance(resource, FamiliarityTable):
            return [familiarity_feature(resource, instance.lemmas) for instance in instances]

        missing = [instance.id for instance in instances if instance.id not in resource]
        if missing:
            raise NotFoundError(
                f"feature '{name}' has no value for instance '{missing[0]}'", resource="feature"
            )
        return [resource.values[instance.id] for instance in instances]

    def value_map(self, name: str, instances: Sequence[Instance]) -> Dict[str, float]:
        """Feature values keyed by instance id."""
        return dict(zip((i.id for i in instances), self.feature_values(name, instances)))

    def coverage(self, name: str, instances: Sequence[Instance]) -> List[bool]:
        return coverage_mask(self.resource(name), instances)

    def build_feature_matrix(
        self,
        instances: Sequence[Instance],
        feature_spec: Sequence[str],
    ) -> Tuple[np.ndarray, Tuple[str, ...]]:
        """
        Assemble model inputs.

        Args:
            instances: Rows of the matrix, in order
            feature_spec: Feature names, one column each, in order

        Returns:
            (n_instances x n_features matrix, column names)

        Raises:
            ValidationError: If feature_spec is empty or repeats a name
        """
        if not feature_spec:
            raise ValidationError("at least one feature is required")
        if len(set(feature_spec)) != len(feature_spec):
            raise ValidationError("features must not repeat")
        columns = [self.feature_values(name, instances) for name in feature_spec]
        matrix = np.array(columns, dtype=float).T.reshape(len(instances), len(feature_spec))
        logger.debug(f"Built {matrix.shape[0]}x{matrix.shape[1]} feature matrix: {', '.join(feature_spec)}")
        return matrix, tuple(feature_spec)

    # ========================================================================
    # Frequency Tables
    # ========================================================================

    @staticmethod
    def load_frequency_table(path: str, unit: LexicalUnit = LexicalUnit.WORD_SURFACE) -> FrequencyTable:
        return FrequencyTableRepository(unit=unit).load(path)

    @staticmethod
    def lookup(table: FrequencyTable, items: Sequence[str]) -> List[Tuple[str, int, float]]:
        """(item, raw count, smoothed log10 frequency) per item."""
        return [(item, table.count(item), smoothed_log_freq(table, item)) for item in items]
