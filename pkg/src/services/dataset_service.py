"""
Dataset service for the lexical complexity toolkit.

This module provides loading, saving and description of annotated datasets:
instances, rating matrices of annotator groups and annotator profiles.
"""

import logging
import math
from collections import Counter
from typing import List, Optional, Sequence, Tuple

from datalayer.model.lcp_models import Origin, Split
from datalayer.model.dto.dataset_dto import (
    Instance, AnnotatorProfile, RatingMatrix, CompositionRow, CompositionTable, ProfileSummaryRow
)
from datalayer.repository.instance_repository import InstanceRepository
from datalayer.repository.rating_repository import RatingRepository
from datalayer.repository.profile_repository import ProfileRepository
from utils.exceptions import DatasetFormatError, ValidationError, NotFoundError
from utils.rating_helpers import select_instances
from utils.statistics import mean_std


logger = logging.getLogger(__name__)

# Composition rows: words containing Chinese-origin tokens, and loanwords
ORIGIN_ROWS = (
    ("Chinese", (Origin.CHINESE, Origin.MIXED)),
    ("Other", (Origin.OTHER,)),
)
SPLIT_ORDER = (Split.TEST, Split.TRIAL)
PROFILE_NUMERIC_FIELDS = ("years_in_japan", "reading_hours_per_week", "age_years", "education_years")


class DatasetService:
    """Service for dataset files."""

    def __init__(self, strict_grid: bool = False):
        self.instance_repo = InstanceRepository()
        self.rating_repo = RatingRepository(strict_grid=strict_grid)
        self.profile_repo = ProfileRepository()

    def load_dataset(self, instances_path: str, ratings_path: str) -> Tuple[List[Instance], RatingMatrix]:
        """
        Load instances and the ratings of one annotator group.

        Args:
            instances_path: Instances TSV
            ratings_path: Ratings TSV over exactly the same instances

        Returns:
            (instances, matrix) sharing an identical ordered instance-id list

        Raises:
            DatasetFormatError: If either file is malformed or the id lists differ
        """
        instances = self.instance_repo.load(instances_path)
        matrix = self.rating_repo.load(ratings_path)
        ids = tuple(instance.id for instance in instances)
        if matrix.instance_ids != ids:
            for position, (expected, found) in enumerate(zip(ids, matrix.instance_ids)):
                if expected != found:
                    raise DatasetFormatError(
                        f"instance id '{found}' where '{expected}' was expected",
                        path=ratings_path, line=position + 2,
                    )
            raise DatasetFormatError(
                f"{len(matrix.instance_ids)} rated instances but {len(ids)} instances",
                path=ratings_path,
            )
        logger.info(f"Loaded dataset: {len(instances)} instances, {matrix.n_annotators} annotators")
        return instances, matrix

    def load_group(self, ratings_path: str, instances: Sequence[Instance]) -> Tuple[List[Instance], RatingMatrix]:
        """
        Load a group's ratings over a subset of known instances.

        Returns:
            (instances in ratings order, matrix)

        Raises:
            DatasetFormatError: If the ratings name an unknown instance
        """
        matrix = self.rating_repo.load(ratings_path)
        by_id = {instance.id: instance for instance in instances}
        unknown = [instance_id for instance_id in matrix.instance_ids if instance_id not in by_id]
        if unknown:
            raise DatasetFormatError(f"unknown instance id '{unknown[0]}'", path=ratings_path)
        return [by_id[instance_id] for instance_id in matrix.instance_ids], matrix

    def save_dataset(
        self,
        instances: Sequence[Instance],
        matrix: RatingMatrix,
        instances_path: str,
        ratings_path: str,
    ) -> None:
        """Write instances and ratings in the formats load_dataset reads."""
        if tuple(instance.id for instance in instances) != matrix.instance_ids:
            raise ValidationError("instances and matrix differ in their instance ids")
        self.instance_repo.save(list(instances), instances_path)
        self.rating_repo.save(matrix, ratings_path)

    def load_profiles(self, path: str) -> List[AnnotatorProfile]:
        return self.profile_repo.load(path)

    @staticmethod
    def split_instances(instances: Sequence[Instance], split: Split) -> List[Instance]:
        """Instances of one split, in dataset order."""
        return [instance for instance in instances if instance.split == Split(split)]

    @staticmethod
    def split_matrix(
        instances: Sequence[Instance],
        matrix: RatingMatrix,
        split: Split,
    ) -> Tuple[List[Instance], Optional[RatingMatrix]]:
        """Instances of one split with the matching matrix columns (None if the split is empty)."""
        selected = DatasetService.split_instances(instances, split)
        if not selected:
            return [], None
        return selected, select_instances(matrix, [instance.id for instance in selected])

    @staticmethod
    def describe(instances: Sequence[Instance]) -> CompositionTable:
        """
        Share of word-origin and part-of-speech categories per split.

        Origin rows count words containing Chinese-origin tokens (Chinese and
        mixed words) and loanwords of other origin; the remainder is of
        Japanese origin. Part-of-speech rows are ordered by their share in
        the first split. A category absent from a split has no percentage.

        Args:
            instances: Nonempty instance list

        Returns:
            CompositionTable
        """
        if not instances:
            raise ValidationError("cannot describe an empty instance list")
        splits = [split for split in SPLIT_ORDER if any(i.split == split for i in instances)]
        by_split = {split: [i for i in instances if i.split == split] for split in splits}

        def share(count: int, total: int) -> Optional[float]:
            return 100.0 * count / total if count else None

        rows = []
        for label, origins in ORIGIN_ROWS:
            rows.append(CompositionRow(
                category="Word Origin",
                label=label,
                percentages={
                    split.value: 100.0 * sum(i.origin in origins for i in items) / len(items)
                    for split, items in by_split.items()
                },
            ))

        pos_counts = {split: Counter(i.pos for i in items) for split, items in by_split.items()}
        first = pos_counts[splits[0]]
        labels = sorted(
            {pos for counts in pos_counts.values() for pos in counts},
            key=lambda pos: (-first.get(pos, 0), pos),
        )
        for pos in labels:
            rows.append(CompositionRow(
                category="Part of Speech",
                label=pos,
                percentages={
                    split.value: share(pos_counts[split].get(pos, 0), len(items))
                    for split, items in by_split.items()
                },
            ))
        return CompositionTable(splits=[split.value for split in splits], rows=rows)

    @staticmethod
    def describe_profiles(profiles: Sequence[AnnotatorProfile]) -> List[ProfileSummaryRow]:
        """
        Annotator background summary.

        Native languages are counted per language (an annotator with two
        counts for both), JLPT levels per level with "none" for an empty
        level, and the numeric fields get mean and sample std.
        """
        if not profiles:
            raise ValidationError("cannot describe an empty profile list")
        rows = [ProfileSummaryRow(category="Annotators", label="total", n=len(profiles))]
        languages = Counter(language for profile in profiles for language in profile.native_languages)
        for language, count in sorted(languages.items(), key=lambda item: (-item[1], item[0])):
            rows.append(ProfileSummaryRow(category="Native Language", label=language, n=count))
        levels = Counter(profile.jlpt_level or "none" for profile in profiles)
        for level in sorted(levels):
            rows.append(ProfileSummaryRow(category="JLPT Level", label=level, n=levels[level]))
        for field in PROFILE_NUMERIC_FIELDS:
            mean, std = mean_std([getattr(profile, field) for profile in profiles])
            rows.append(ProfileSummaryRow(
                category="Background",
                label=field,
                n=len(profiles),
                mean=mean,
                std=None if math.isnan(std) else std,
            ))
        return rows

    @staticmethod
    def instance_index(instances: Sequence[Instance], instance_ids: Sequence[str]) -> List[Instance]:
        """Instances for the given ids, in the given order."""
        by_id = {instance.id: instance for instance in instances}
        missing = [i for i in instance_ids if i not in by_id]
        if missing:
            raise NotFoundError(f"unknown instance '{missing[0]}'", resource="instance")
        return [by_id[i] for i in instance_ids]
