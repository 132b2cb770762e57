"""
Analysis DTOs for the lexical complexity toolkit.

This module contains Pydantic models for hypothesis-test results and the
rows of the agreement, correlation, origin-gap and per-word difference tables.
"""

from typing import Optional, Dict, List, Literal

from pydantic import Field, model_validator

from .dataset_dto import BaseDTO


# ============================================================================
# Test Result DTOs
# ============================================================================

class PermutationResult(BaseDTO):
    """Two-sided unpaired permutation test outcome."""
    observed_diff: float = Field(..., description="mean(a) - mean(b)")
    p_value: float = Field(..., gt=0.0, le=1.0)
    mode: Literal["exact", "monte_carlo"]
    n_partitions: Optional[int] = Field(None, description="Relabelings enumerated (exact mode)")
    n_samples: Optional[int] = Field(None, description="Random relabelings drawn (Monte-Carlo mode)")
    seed: Optional[int] = None

    @model_validator(mode="after")
    def _check_mode(self) -> "PermutationResult":
        if self.mode == "exact":
            if self.n_partitions is None:
                raise ValueError("exact mode requires n_partitions")
            if self.p_value < 1.0 / self.n_partitions:
                raise ValueError("exact p-value below 1 / n_partitions")
        elif self.n_samples is None or self.seed is None:
            raise ValueError("monte_carlo mode requires n_samples and seed")
        return self


class SteigerResult(BaseDTO):
    """Steiger's test for two dependent correlations sharing one variable."""
    z_statistic: float
    p_value: float = Field(..., gt=0.0, le=1.0)
    n: int = Field(..., ge=4)
    r_jk: Optional[float] = None
    r_jh: Optional[float] = None
    r_kh: Optional[float] = None


# ============================================================================
# Table Row DTOs
# ============================================================================

class AgreementRow(BaseDTO):
    """Agreement of one annotator group or union of groups."""
    name: str
    members: List[str]
    n_annotators: int
    alpha: float
    mean_pcc: float
    lowers_alpha: bool = Field(False, description="Union agrees less than each member group")
    lowers_pcc: bool = Field(False, description="Union correlates less than each member group")


class CorrelationRow(BaseDTO):
    """Correlation of one resource's feature with complexity."""
    name: str
    kind: str
    pcc: float
    potential_pcc: float
    n: int
    n_covered: int


class MeanStd(BaseDTO):
    mean: float
    std: Optional[float] = None


class OriginGapRow(BaseDTO):
    """Descriptive statistics of one origin group."""
    origin: str
    n_words: int
    log_freq: MeanStd
    base: MeanStd
    difference: MeanStd


class OriginGapTable(BaseDTO):
    """Origin groups compared column by column with permutation tests."""
    rows: List[OriginGapRow]
    p_values: Dict[str, PermutationResult]


class DifferenceRow(BaseDTO):
    """One target word with complexities from two annotator groups."""
    instance_id: str
    target: str
    origin: str
    log_freq: float
    base: float
    other: float
    difference: float
