"""
Fitted model DTOs for the lexical complexity toolkit.

Models are immutable and serialize to JSON with shortest round-trip float
encoding, so save -> load reproduces every parameter exactly.
"""

from typing import Tuple, Literal

from pydantic import Field, model_validator

from .dataset_dto import BaseDTO


class RidgeModel(BaseDTO):
    """Linear regression with an L2 penalty on the weights (LCP)."""
    kind: Literal["ridge"] = "ridge"
    feature_names: Tuple[str, ...] = Field(default=())
    weights: Tuple[float, ...]
    intercept: float
    l2_strength: float = Field(1.0, ge=0.0)

    @model_validator(mode="after")
    def _check_names(self) -> "RidgeModel":
        if self.feature_names and len(self.feature_names) != len(self.weights):
            raise ValueError("feature_names and weights differ in length")
        return self


class LogisticModel(BaseDTO):
    """Class-weighted, L2-penalized logistic regression (CWI)."""
    kind: Literal["logistic"] = "logistic"
    feature_names: Tuple[str, ...] = Field(default=())
    weights: Tuple[float, ...]
    intercept: float
    l2_strength: float = Field(1.0, ge=0.0)
    class_weights: Tuple[float, float] = Field((1.0, 1.0), description="(positive, negative)")
    iterations: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_model(self) -> "LogisticModel":
        if self.feature_names and len(self.feature_names) != len(self.weights):
            raise ValueError("feature_names and weights differ in length")
        if min(self.class_weights) <= 0:
            raise ValueError("class weights must be positive")
        return self
