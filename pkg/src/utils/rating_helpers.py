"""
Rating aggregation helpers.

This module provides pure functions that turn a rating matrix into group
and individual targets, binary CWI labels, unions of annotator groups and
row/column selections.
"""

from typing import List, Optional, Sequence

import numpy as np

from datalayer.model.dto.dataset_dto import RatingMatrix, LabeledView
from datalayer.model.lcp_models import Provenance
from .exceptions import ValidationError, NotFoundError, AnnotatorMismatchError


def cwi_label(value: float, threshold: float = 0.375) -> bool:
    """
    Binarize a complexity value.

    Args:
        value: Complexity in [0, 1]
        threshold: Threshold in [0, 1]

    Returns:
        True (complex) iff value >= threshold
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValidationError(f"threshold must lie in [0, 1], got {threshold}")
    return bool(value >= threshold)


def group_mean(matrix: RatingMatrix) -> LabeledView:
    """
    Mean of the present ratings of every instance.

    Args:
        matrix: Rating matrix

    Returns:
        LCP view with provenance group_mean
    """
    means = np.nanmean(matrix.values, axis=0)
    return LabeledView(
        instance_ids=matrix.instance_ids,
        targets=tuple(float(m) for m in means),
        provenance=Provenance.GROUP_MEAN,
    )


def group_majority(matrix: RatingMatrix, threshold: float = 0.375) -> LabeledView:
    """
    Majority vote over binarized ratings.

    An instance is complex when at least half of its present ratings reach
    the threshold, so ties with an even number of raters resolve to complex.

    Args:
        matrix: Rating matrix
        threshold: CWI threshold

    Returns:
        CWI view with provenance group_majority
    """
    cwi_label(0.0, threshold)
    present = matrix.present
    positive = np.where(present, np.nan_to_num(matrix.values, nan=-1.0) >= threshold, False)
    labels = 2 * positive.sum(axis=0) >= present.sum(axis=0)
    return LabeledView(
        instance_ids=matrix.instance_ids,
        targets=tuple(bool(label) for label in labels),
        provenance=Provenance.GROUP_MAJORITY,
    )


def mean_threshold_labels(matrix: RatingMatrix, threshold: float = 0.375) -> LabeledView:
    """Binarize the group mean instead of voting."""
    means = group_mean(matrix)
    return LabeledView(
        instance_ids=means.instance_ids,
        targets=tuple(cwi_label(value, threshold) for value in means.targets),
        provenance=Provenance.GROUP_MEAN_THRESHOLD,
    )


def individual_view(matrix: RatingMatrix, annotator_id: str) -> LabeledView:
    """
    Ratings of one annotator over the instances they rated.

    Args:
        matrix: Rating matrix
        annotator_id: Annotator to extract

    Returns:
        LCP view with provenance individual(annotator_id)
    """
    if annotator_id not in matrix.annotator_ids:
        raise NotFoundError(f"unknown annotator '{annotator_id}'", resource="annotator")
    row = matrix.row(annotator_id)
    keep = np.flatnonzero(~np.isnan(row))
    return LabeledView(
        instance_ids=tuple(matrix.instance_ids[i] for i in keep),
        targets=tuple(float(row[i]) for i in keep),
        provenance=Provenance.INDIVIDUAL,
        annotator_id=annotator_id,
    )


def individual_labels(matrix: RatingMatrix, annotator_id: str, threshold: float = 0.375) -> LabeledView:
    """Thresholded ratings of one annotator."""
    view = individual_view(matrix, annotator_id)
    return LabeledView(
        instance_ids=view.instance_ids,
        targets=tuple(cwi_label(value, threshold) for value in view.targets),
        provenance=Provenance.INDIVIDUAL,
        annotator_id=annotator_id,
    )


def union(matrices: Sequence[RatingMatrix], names: Optional[Sequence[str]] = None) -> RatingMatrix:
    """
    Stack the annotators of several groups rated on the same instances.

    When annotator ids collide, every id is prefixed with its group name
    as "<name>:<id>".

    Args:
        matrices: Rating matrices sharing an identical instance-id list
        names: Group names used as prefixes (defaults to group1, group2, ...)

    Returns:
        Rating matrix with all annotators

    Raises:
        AnnotatorMismatchError: If the instance lists differ
    """
    if not matrices:
        raise ValidationError("union needs at least one matrix")
    if names is None:
        names = [f"group{i + 1}" for i in range(len(matrices))]
    if len(names) != len(matrices):
        raise ValidationError("one name per matrix is required")
    if len(set(names)) != len(names):
        raise ValidationError("group names must be distinct")

    first = matrices[0]
    for name, matrix in zip(names, matrices):
        if matrix.instance_ids != first.instance_ids:
            raise AnnotatorMismatchError(
                f"group '{name}' is rated on a different instance list",
                details={"group": name},
            )

    ids: List[str] = [a for matrix in matrices for a in matrix.annotator_ids]
    if len(set(ids)) != len(ids):
        ids = [f"{name}:{a}" for name, matrix in zip(names, matrices) for a in matrix.annotator_ids]

    return RatingMatrix(
        annotator_ids=tuple(ids),
        instance_ids=first.instance_ids,
        values=np.vstack([matrix.values for matrix in matrices]),
        strict_grid=all(matrix.strict_grid for matrix in matrices),
    )


def select_annotators(matrix: RatingMatrix, annotator_ids: Sequence[str]) -> RatingMatrix:
    """Keep the given annotator rows, in the given order."""
    missing = [a for a in annotator_ids if a not in matrix.annotator_ids]
    if missing:
        raise NotFoundError(f"unknown annotator '{missing[0]}'", resource="annotator")
    rows = [matrix.annotator_ids.index(a) for a in annotator_ids]
    return RatingMatrix(
        annotator_ids=tuple(annotator_ids),
        instance_ids=matrix.instance_ids,
        values=matrix.values[rows],
        strict_grid=matrix.strict_grid,
    )


def select_instances(matrix: RatingMatrix, instance_ids: Sequence[str]) -> RatingMatrix:
    """
    Keep the given instance columns, in the given order.

    Annotators left without any rating are dropped.
    """
    position = {instance_id: i for i, instance_id in enumerate(matrix.instance_ids)}
    missing = [i for i in instance_ids if i not in position]
    if missing:
        raise NotFoundError(f"unknown instance '{missing[0]}'", resource="instance")
    values = matrix.values[:, [position[i] for i in instance_ids]]
    keep = np.flatnonzero((~np.isnan(values)).any(axis=1))
    return RatingMatrix(
        annotator_ids=tuple(matrix.annotator_ids[i] for i in keep),
        instance_ids=tuple(instance_ids),
        values=values[keep],
        strict_grid=matrix.strict_grid,
    )
