# Repository exports for the lexical complexity toolkit

from ._repository_abc import RepositoryABC
from ._base_repository import TsvRepository
from .instance_repository import InstanceRepository
from .rating_repository import RatingRepository
from .profile_repository import ProfileRepository
from .lexicon_repository import (
    FrequencyTableRepository,
    LevelTableRepository,
    FamiliarityTableRepository,
    ExternalFeatureRepository,
)
from .model_repository import ModelRepository

__all__ = [
    # Base repositories
    "RepositoryABC",
    "TsvRepository",
    # Dataset repositories
    "InstanceRepository",
    "RatingRepository",
    "ProfileRepository",
    # Lexical resource repositories
    "FrequencyTableRepository",
    "LevelTableRepository",
    "FamiliarityTableRepository",
    "ExternalFeatureRepository",
    # Model repository
    "ModelRepository",
]
