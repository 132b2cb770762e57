"""
Plot data service for the lexical complexity toolkit.

This module computes the numbers behind the complexity histograms and the
log-frequency scatter plots with their linear fits, for external plotting
tools.
"""

import logging
from typing import List, Mapping, Sequence, Tuple

import numpy as np
from scipy.stats import linregress, t as student_t

from datalayer.model.dto.dataset_dto import Instance, LabeledView
from datalayer.model.dto.experiment_dto import (
    HistogramBin, ScatterPoint, FitBandPoint, LinearFit, PlotData
)
from services.dataset_service import SPLIT_ORDER
from utils.exceptions import ValidationError


logger = logging.getLogger(__name__)

BAND_POINTS = 100
CONFIDENCE = 0.95


class PlotService:
    """Service for plot data."""

    def __init__(self, bins: int = 10):
        if bins < 1:
            raise ValidationError(f"bins must be at least 1, got {bins}")
        self.bins = bins

    def histogram(self, instances: Sequence[Instance], name: str, view: LabeledView) -> List[HistogramBin]:
        """Bin counts over [0, 1] of a view's complexities, per split."""
        targets = view.as_dict()
        rows = []
        for split in SPLIT_ORDER:
            values = [targets[i.id] for i in instances if i.split == split and i.id in targets]
            if not values:
                continue
            counts, edges = np.histogram(np.asarray(values, dtype=float), bins=self.bins, range=(0.0, 1.0))
            rows.extend(
                HistogramBin(split=split.value, view=name, lower=float(lower), upper=float(upper), count=int(count))
                for count, lower, upper in zip(counts, edges[:-1], edges[1:])
            )
        return rows

    @staticmethod
    def linear_fit(name: str, x: np.ndarray, y: np.ndarray) -> Tuple[LinearFit, List[FitBandPoint]]:
        """
        Least-squares line with a pointwise 95% confidence band.

        The band is evaluated at evenly spaced abscissae spanning the data,
        from the residual standard error and the t distribution with n - 2
        degrees of freedom.
        """
        n = x.size
        if n < 3:
            raise ValidationError(f"view {name}: a confidence band needs at least 3 points")
        if np.all(x == x[0]):
            raise ValidationError(f"view {name}: log-frequency is constant")
        fit = linregress(x, y)
        residuals = y - (fit.intercept + fit.slope * x)
        scale = np.sqrt(float(residuals @ residuals) / (n - 2))
        x_mean = x.mean()
        sxx = float(((x - x_mean) ** 2).sum())
        quantile = float(student_t.ppf(0.5 + CONFIDENCE / 2.0, n - 2))

        grid = np.linspace(x.min(), x.max(), BAND_POINTS)
        center = fit.intercept + fit.slope * grid
        half_width = quantile * scale * np.sqrt(1.0 / n + (grid - x_mean) ** 2 / sxx)
        bands = [
            FitBandPoint(view=name, x=float(gx), fit=float(c), lower=float(c - h), upper=float(c + h))
            for gx, c, h in zip(grid, center, half_width)
        ]
        return LinearFit(view=name, slope=float(fit.slope), intercept=float(fit.intercept), n=n), bands

    def plot_data(
        self,
        instances: Sequence[Instance],
        views: Mapping[str, LabeledView],
        frequency: Mapping[str, float],
    ) -> PlotData:
        """
        Histogram, scatter and fit data for named complexity views.

        Args:
            instances: Instances the views refer to
            views: View name -> LCP view
            frequency: Log-frequency per instance id

        Returns:
            PlotData
        """
        if not views:
            raise ValidationError("at least one view is required")
        by_id = {instance.id: instance for instance in instances}
        histogram, scatter, fits, bands = [], [], [], []
        for name, view in views.items():
            if view.is_binary:
                raise ValidationError(f"view {name} holds binary labels, complexities are required")
            histogram.extend(self.histogram(instances, name, view))

            points = [
                ScatterPoint(
                    view=name,
                    instance_id=instance_id,
                    target=by_id[instance_id].target,
                    log_freq=float(frequency[instance_id]),
                    complexity=float(value),
                )
                for instance_id, value in zip(view.instance_ids, view.targets)
                if instance_id in by_id and instance_id in frequency
            ]
            scatter.extend(points)
            fit, band = self.linear_fit(
                name,
                np.array([p.log_freq for p in points], dtype=float),
                np.array([p.complexity for p in points], dtype=float),
            )
            fits.append(fit)
            bands.extend(band)
            logger.debug(f"View {name}: {len(points)} points, slope {fit.slope:.4f}")
        return PlotData(histogram=histogram, scatter=scatter, fits=fits, bands=bands)
