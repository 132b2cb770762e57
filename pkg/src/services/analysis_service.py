"""
Analysis service for the lexical complexity toolkit.

This module provides the annotation analyses: agreement of annotator groups
and their unions, correlation of lexical features with complexity, the
comparison of two dependent correlations, and the word-origin gap between
two annotator groups.
"""

import logging
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from config import Config
from datalayer.model.lcp_models import Origin
from datalayer.model.dto.dataset_dto import Instance, RatingMatrix, LabeledView
from datalayer.model.dto.analysis_dto import (
    AgreementRow, CorrelationRow, MeanStd, OriginGapRow, OriginGapTable, DifferenceRow, SteigerResult
)
from services.feature_service import FeatureService
from utils.exceptions import NotFoundError, ValidationError, UndefinedCorrelationError
from utils.rating_helpers import union
from utils.statistics import (
    pearson,
    krippendorff_alpha_interval,
    mean_pairwise_pcc,
    permutation_test,
    steiger_test,
    mean_std,
)


logger = logging.getLogger(__name__)

GAP_COLUMNS = ("log_freq", "base", "difference")


def aligned_targets(instances: Sequence[Instance], view: LabeledView) -> np.ndarray:
    """Targets of a view in instance order."""
    targets = view.as_dict()
    missing = [instance.id for instance in instances if instance.id not in targets]
    if missing:
        raise NotFoundError(f"view {view.label} has no target for instance '{missing[0]}'", resource="instance")
    return np.array([targets[instance.id] for instance in instances], dtype=float)


def _describe(values: Sequence[float]) -> MeanStd:
    mean, std = mean_std(values)
    return MeanStd(mean=mean, std=None if np.isnan(std) else std)


class AnalysisService:
    """Service for agreement, correlation and origin-gap analyses."""

    def __init__(self, features: FeatureService = None, config: Config = None):
        self.features = features or FeatureService()
        self.config = config or Config()

    # ========================================================================
    # Agreement
    # ========================================================================

    def agreement_table(
        self,
        groups: Mapping[str, RatingMatrix],
        unions: Sequence[Sequence[str]] = (),
    ) -> List[AgreementRow]:
        """
        Krippendorff's alpha and mean pairwise PCC per group and per union.

        A union row is flagged when its value is below the value of every
        member group.

        Args:
            groups: Group name -> rating matrix
            unions: Lists of group names to merge

        Returns:
            One row per group, then one per union
        """
        if not groups:
            raise ValidationError("at least one annotator group is required")
        rows: Dict[str, AgreementRow] = {}
        for name, matrix in groups.items():
            rows[name] = AgreementRow(
                name=name,
                members=[name],
                n_annotators=matrix.n_annotators,
                alpha=krippendorff_alpha_interval(matrix),
                mean_pcc=mean_pairwise_pcc(matrix),
            )
            logger.info(f"Group {name}: alpha={rows[name].alpha:.3f}, mean PCC={rows[name].mean_pcc:.3f}")

        result = list(rows.values())
        for members in unions:
            unknown = [member for member in members if member not in groups]
            if unknown:
                raise NotFoundError(f"unknown group '{unknown[0]}' in union", resource="group")
            if len(members) < 2:
                raise ValidationError("a union needs at least two groups")
            merged = union([groups[member] for member in members], names=list(members))
            alpha = krippendorff_alpha_interval(merged)
            mean_pcc = mean_pairwise_pcc(merged)
            result.append(AgreementRow(
                name="+".join(members),
                members=list(members),
                n_annotators=merged.n_annotators,
                alpha=alpha,
                mean_pcc=mean_pcc,
                lowers_alpha=all(alpha < rows[member].alpha for member in members),
                lowers_pcc=all(mean_pcc < rows[member].mean_pcc for member in members),
            ))
        return result

    # ========================================================================
    # Correlation
    # ========================================================================

    def correlation_table(
        self,
        instances: Sequence[Instance],
        complexity: LabeledView,
        names: Sequence[str],
    ) -> List[CorrelationRow]:
        """
        PCC of each feature with complexity, over all instances and over
        the instances the resource covers without substitution.

        Rows are ordered by |PCC|, largest first.

        Raises:
            UndefinedCorrelationError: If a resource covers fewer than 2 instances
        """
        gold = aligned_targets(instances, complexity)
        rows = []
        for name in names:
            values = np.array(self.features.feature_values(name, instances), dtype=float)
            covered = np.array(self.features.coverage(name, instances), dtype=bool)
            n_covered = int(covered.sum())
            if n_covered < 2:
                raise UndefinedCorrelationError(
                    f"feature '{name}' covers {n_covered} instances, potential PCC needs at least 2"
                )
            rows.append(CorrelationRow(
                name=name,
                kind=self.features.kind(name).value,
                pcc=pearson(values, gold),
                potential_pcc=pearson(values[covered], gold[covered]),
                n=len(instances),
                n_covered=n_covered,
            ))
        return sorted(rows, key=lambda row: -abs(row.pcc))

    def compare_correlations(
        self,
        instances: Sequence[Instance],
        complexity: LabeledView,
        name_a: str,
        name_b: str,
    ) -> SteigerResult:
        """
        Steiger's test of whether two features correlate equally with complexity.

        Args:
            instances: Instances scored
            complexity: Complexity view
            name_a: Feature k
            name_b: Feature h

        Returns:
            SteigerResult for r(complexity, a) vs r(complexity, b)
        """
        gold = aligned_targets(instances, complexity)
        a = self.features.feature_values(name_a, instances)
        b = self.features.feature_values(name_b, instances)
        return steiger_test(pearson(gold, a), pearson(gold, b), pearson(a, b), len(instances))

    # ========================================================================
    # Word Origin
    # ========================================================================

    def origin_gap_analysis(
        self,
        instances: Sequence[Instance],
        base: LabeledView,
        other: LabeledView,
        frequency: Mapping[str, float],
        origins: Tuple[Origin, Origin] = (Origin.JAPANESE, Origin.CHINESE),
    ) -> OriginGapTable:
        """
        Compare two origin groups on log-frequency, base complexity and the
        complexity difference between two annotator groups.

        Args:
            instances: Instances rated in both views
            base: Complexity of the reference group
            other: Complexity of the compared group
            frequency: Log-frequency per instance id
            origins: The two origin categories compared

        Returns:
            OriginGapTable with one row per origin and one p-value per column
        """
        if set(base.instance_ids) != set(other.instance_ids):
            raise ValidationError("base and other views cover different instances")
        in_view = set(base.instance_ids)
        selected = [instance for instance in instances if instance.id in in_view]
        base_values = aligned_targets(selected, base)
        other_values = aligned_targets(selected, other)
        columns = {
            "log_freq": np.array([frequency[instance.id] for instance in selected], dtype=float),
            "base": base_values,
            "difference": other_values - base_values,
        }

        rows = []
        groups = []
        for origin in origins:
            mask = np.array([instance.origin == Origin(origin) for instance in selected])
            if not mask.any():
                raise ValidationError(f"no words of origin {Origin(origin).value}")
            groups.append(mask)
            rows.append(OriginGapRow(
                origin=Origin(origin).value,
                n_words=int(mask.sum()),
                log_freq=_describe(columns["log_freq"][mask]),
                base=_describe(columns["base"][mask]),
                difference=_describe(columns["difference"][mask]),
            ))

        p_values = {
            column: permutation_test(
                columns[column][groups[0]],
                columns[column][groups[1]],
                exact_limit=self.config.exact_limit,
                seed=self.config.seed,
                n_samples=self.config.monte_carlo_samples,
            )
            for column in GAP_COLUMNS
        }
        logger.info(
            f"Origin gap {rows[0].origin} vs {rows[1].origin}: "
            f"difference p={p_values['difference'].p_value:.4g}"
        )
        return OriginGapTable(rows=rows, p_values=p_values)

    def difference_table(
        self,
        instances: Sequence[Instance],
        base: LabeledView,
        other: LabeledView,
        frequency: Mapping[str, float],
    ) -> List[DifferenceRow]:
        """Per-word complexities of two groups, sorted ascending by their difference (stable)."""
        other_targets = other.as_dict()
        by_id = {instance.id: instance for instance in instances}
        rows = []
        for instance_id, value in zip(base.instance_ids, base.targets):
            if instance_id not in other_targets:
                continue
            if instance_id not in by_id:
                raise NotFoundError(f"unknown instance '{instance_id}'", resource="instance")
            instance = by_id[instance_id]
            rows.append(DifferenceRow(
                instance_id=instance_id,
                target=instance.target,
                origin=instance.origin.value,
                log_freq=frequency[instance_id],
                base=float(value),
                other=float(other_targets[instance_id]),
                difference=round(float(other_targets[instance_id]) - float(value), 12),
            ))
        if not rows:
            raise ValidationError("the two views share no instances")
        return sorted(rows, key=lambda row: row.difference)
