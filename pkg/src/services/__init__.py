# Services exports for the lexical complexity toolkit

from .dataset_service import DatasetService
from .feature_service import FeatureService
from .analysis_service import AnalysisService
from .experiment_service import ExperimentService
from .plot_service import PlotService

__all__ = [
    "DatasetService",
    "FeatureService",
    "AnalysisService",
    "ExperimentService",
    "PlotService",
]
