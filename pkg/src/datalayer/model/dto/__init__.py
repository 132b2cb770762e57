"""
DTO package.

This package contains Pydantic models exchanged between the repository,
service and command layers.
"""

from .dataset_dto import (
    BaseDTO,
    Instance,
    AnnotatorProfile,
    RatingMatrix,
    LabeledView,
    CompositionRow,
    CompositionTable,
    ProfileSummaryRow,
)

from .lexicon_dto import (
    FrequencyTable,
    LevelTable,
    FamiliarityTable,
    ExternalFeature,
    ResourceRef,
)

from .analysis_dto import (
    PermutationResult,
    SteigerResult,
    AgreementRow,
    CorrelationRow,
    OriginGapRow,
    OriginGapTable,
    DifferenceRow,
)

from .model_dto import (
    RidgeModel,
    LogisticModel,
)

from .experiment_dto import (
    ExperimentConfig,
    ExperimentReport,
    ResultTable,
    PlotData,
)

from .config_dto import RunConfig

__all__ = [
    # Dataset DTOs
    "BaseDTO",
    "Instance",
    "AnnotatorProfile",
    "RatingMatrix",
    "LabeledView",
    "CompositionRow",
    "CompositionTable",
    "ProfileSummaryRow",

    # Lexicon DTOs
    "FrequencyTable",
    "LevelTable",
    "FamiliarityTable",
    "ExternalFeature",
    "ResourceRef",

    # Analysis DTOs
    "PermutationResult",
    "SteigerResult",
    "AgreementRow",
    "CorrelationRow",
    "OriginGapRow",
    "OriginGapTable",
    "DifferenceRow",

    # Model DTOs
    "RidgeModel",
    "LogisticModel",

    # Experiment DTOs
    "ExperimentConfig",
    "ExperimentReport",
    "ResultTable",
    "PlotData",

    # Configuration DTOs
    "RunConfig",
]
