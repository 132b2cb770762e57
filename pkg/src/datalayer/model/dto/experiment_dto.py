"""
Experiment DTOs for the lexical complexity toolkit.

This module contains Pydantic models for experiment configuration, per-setting
reports, rendered result tables and plot data.
"""

from typing import Optional, Dict, List, Tuple

from pydantic import Field, model_validator

from datalayer.model.lcp_models import Task, Source, GroupLabelRule, ClassWeight
from .dataset_dto import BaseDTO


# ============================================================================
# Experiment Configuration DTOs
# ============================================================================

class ExperimentConfig(BaseDTO):
    """One cell of the train-source x test-source design."""
    task: Task
    train_source: Source
    test_source: Source
    feature_spec: Tuple[str, ...] = Field(..., min_length=1)
    threshold: float = Field(0.375, ge=0.0, le=1.0)
    ridge_l2: float = Field(1.0, ge=0.0)
    logistic_l2: float = Field(1.0, ge=0.0)
    class_weight: ClassWeight = ClassWeight.BALANCED
    group_label_rule: GroupLabelRule = GroupLabelRule.MAJORITY

    @property
    def setting(self) -> str:
        return f"{self.train_source.value.capitalize()}-{self.test_source.value.capitalize()}"


# ============================================================================
# Report DTOs
# ============================================================================

class ExperimentReport(BaseDTO):
    """Metric of one setting, aggregated over evaluation runs."""
    task: Task
    train_source: Source
    test_source: Source
    features: Tuple[str, ...]
    metric_name: str
    mean: float
    std: Optional[float] = None
    per_annotator: Optional[Dict[str, float]] = None
    excluded: Dict[str, str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_std(self) -> "ExperimentReport":
        runs = len(self.per_annotator) if self.per_annotator is not None else 1
        if (self.std is not None) != (runs > 1):
            raise ValueError("std must be present exactly when there is more than one run")
        return self

    @property
    def setting(self) -> Tuple[Source, Source]:
        return (self.train_source, self.test_source)


class ResultTable(BaseDTO):
    """2x2 table of one task: rows are train sources, columns test sources."""
    task: Task
    metric_name: str
    features: Tuple[str, ...]
    cells: Dict[str, Dict[str, str]] = Field(..., description="train -> test -> rendered value")


# ============================================================================
# Plot Data DTOs
# ============================================================================

class HistogramBin(BaseDTO):
    split: str
    view: str
    lower: float
    upper: float
    count: int


class ScatterPoint(BaseDTO):
    view: str
    instance_id: str
    target: str
    log_freq: float
    complexity: float


class FitBandPoint(BaseDTO):
    view: str
    x: float
    fit: float
    lower: float
    upper: float


class LinearFit(BaseDTO):
    view: str
    slope: float
    intercept: float
    n: int


class PlotData(BaseDTO):
    """Numbers behind the complexity histogram and the frequency scatter plots."""
    histogram: List[HistogramBin]
    scatter: List[ScatterPoint]
    fits: List[LinearFit]
    bands: List[FitBandPoint]
