"""
Evaluation metrics.

R^2 for LCP and macro-averaged F1 for CWI.
"""

from typing import Sequence

import numpy as np
from sklearn.metrics import f1_score, r2_score

from .exceptions import ValidationError


def r_squared(gold: Sequence[float], pred: Sequence[float]) -> float:
    """
    Coefficient of determination 1 - SS_res / SS_tot.

    SS_tot is taken around the mean of the gold values, so a model worse
    than predicting that mean scores below zero.

    Raises:
        ValidationError: On length mismatch, fewer than 2 values or constant gold
    """
    gold = np.asarray(gold, dtype=float)
    pred = np.asarray(pred, dtype=float)
    if gold.shape != pred.shape or gold.ndim != 1:
        raise ValidationError(f"gold and predictions differ in shape: {gold.shape} vs {pred.shape}")
    if gold.size < 2:
        raise ValidationError("R^2 needs at least 2 values")
    if np.all(gold == gold[0]):
        raise ValidationError("R^2 is undefined for constant gold values")
    return float(r2_score(gold, pred))


def macro_f1(gold: Sequence[bool], pred: Sequence[bool]) -> float:
    """
    Mean of the F1 scores of the positive and the negative class.

    Both classes always take part; a class with no gold and no predicted
    members scores 0.
    """
    gold = np.asarray(gold, dtype=bool)
    pred = np.asarray(pred, dtype=bool)
    if gold.shape != pred.shape or gold.ndim != 1:
        raise ValidationError(f"gold and predictions differ in shape: {gold.shape} vs {pred.shape}")
    if gold.size == 0:
        raise ValidationError("F1 needs at least 1 value")
    return float(f1_score(gold, pred, labels=[False, True], average="macro", zero_division=0))
