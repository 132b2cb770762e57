"""
Mappers for analysis and experiment results.

This module flattens result DTOs into the rows printed as TSV by the
command-line tool.
"""

from typing import Any, Dict, List, Sequence

from ..model.dto.dataset_dto import CompositionTable, ProfileSummaryRow
from ..model.dto.analysis_dto import (
    AgreementRow, CorrelationRow, OriginGapTable, DifferenceRow, SteigerResult, MeanStd
)
from ..model.dto.experiment_dto import ExperimentReport, ResultTable, PlotData
from utils.statistics import format_p_value


Row = Dict[str, Any]


def _mean_std(value: MeanStd) -> str:
    if value.std is None:
        return f"{value.mean:+.3f}"
    return f"{value.mean:+.3f} ({value.std:.3f})"


# ============================================================================
# Analysis Mappers
# ============================================================================

class AnalysisMapper:
    """Mapper for analysis result DTOs to output rows."""

    AGREEMENT_COLUMNS = ("name", "n_annotators", "alpha", "mean_pcc", "lowers_alpha", "lowers_pcc")
    CORRELATION_COLUMNS = ("name", "kind", "pcc", "potential_pcc", "n", "n_covered")
    DIFFERENCE_COLUMNS = ("instance_id", "target", "origin", "log_freq", "base", "other", "difference")
    PROFILE_COLUMNS = ("category", "label", "n", "mean", "std")

    @staticmethod
    def agreement_rows(rows: Sequence[AgreementRow]) -> List[Row]:
        return [
            {
                "name": row.name,
                "n_annotators": row.n_annotators,
                "alpha": f"{row.alpha:.3f}",
                "mean_pcc": f"{row.mean_pcc:.3f}",
                "lowers_alpha": str(row.lowers_alpha).lower(),
                "lowers_pcc": str(row.lowers_pcc).lower(),
            }
            for row in rows
        ]

    @staticmethod
    def correlation_rows(rows: Sequence[CorrelationRow]) -> List[Row]:
        return [
            {
                "name": row.name,
                "kind": row.kind,
                "pcc": f"{row.pcc:.2f}",
                "potential_pcc": f"{row.potential_pcc:.2f}",
                "n": row.n,
                "n_covered": row.n_covered,
            }
            for row in rows
        ]

    @staticmethod
    def steiger_rows(name_a: str, name_b: str, result: SteigerResult) -> List[Row]:
        return [{
            "feature_a": name_a,
            "feature_b": name_b,
            "r_a": f"{result.r_jk:.4f}",
            "r_b": f"{result.r_jh:.4f}",
            "r_ab": f"{result.r_kh:.4f}",
            "n": result.n,
            "z": f"{result.z_statistic:.4f}",
            "p_value": format_p_value(result.p_value),
        }]

    @staticmethod
    def origin_gap_rows(table: OriginGapTable) -> List[Row]:
        """One row per origin group, then a p-value row."""
        rows: List[Row] = [
            {
                "origin": row.origin,
                "n_words": row.n_words,
                "log_freq": _mean_std(row.log_freq),
                "base": _mean_std(row.base),
                "difference": _mean_std(row.difference),
            }
            for row in table.rows
        ]
        p_row: Row = {"origin": "p-value", "n_words": ""}
        for column, result in table.p_values.items():
            p_row[column] = format_p_value(result.p_value)
        rows.append(p_row)
        return rows

    @staticmethod
    def difference_rows(rows: Sequence[DifferenceRow]) -> List[Row]:
        return [
            {
                "instance_id": row.instance_id,
                "target": row.target,
                "origin": row.origin,
                "log_freq": f"{row.log_freq:.3f}",
                "base": f"{row.base:.3f}",
                "other": f"{row.other:.3f}",
                "difference": f"{row.difference:+.3f}",
            }
            for row in rows
        ]

    @staticmethod
    def composition_rows(table: CompositionTable) -> List[Row]:
        rows = []
        for row in table.rows:
            entry: Row = {"category": row.category, "label": row.label}
            for split in table.splits:
                value = row.percentages.get(split)
                entry[split] = "---" if value is None else f"{value:.1f}%"
            rows.append(entry)
        return rows

    @staticmethod
    def profile_rows(rows: Sequence[ProfileSummaryRow]) -> List[Row]:
        return [
            {
                "category": row.category,
                "label": row.label,
                "n": row.n,
                "mean": "" if row.mean is None else f"{row.mean:.2f}",
                "std": "" if row.std is None else f"{row.std:.2f}",
            }
            for row in rows
        ]


# ============================================================================
# Experiment Mappers
# ============================================================================

class ExperimentMapper:
    """Mapper for experiment result DTOs to output rows."""

    REPORT_COLUMNS = ("task", "features", "train", "test", "metric", "mean", "std", "runs", "excluded")

    @staticmethod
    def report_rows(reports: Sequence[ExperimentReport]) -> List[Row]:
        return [
            {
                "task": report.task.value,
                "features": ",".join(report.features),
                "train": report.train_source.value,
                "test": report.test_source.value,
                "metric": report.metric_name,
                "mean": f"{report.mean:.4f}",
                "std": "" if report.std is None else f"{report.std:.4f}",
                "runs": len(report.per_annotator) if report.per_annotator is not None else 1,
                "excluded": ",".join(sorted(report.excluded)),
            }
            for report in reports
        ]

    @staticmethod
    def table_rows(tables: Sequence[ResultTable]) -> List[Row]:
        """Each table as two rows (train sources) with Group/Individual columns."""
        rows = []
        for table in tables:
            for train, cells in table.cells.items():
                rows.append({
                    "task": table.task.value,
                    "metric": table.metric_name,
                    "features": ",".join(table.features),
                    "train": train,
                    **cells,
                })
        return rows

    @staticmethod
    def plot_rows(data: PlotData) -> Dict[str, List[Row]]:
        """Plot data as one row list per section (histogram, scatter, fit, band)."""
        return {
            "histogram": [bin_.model_dump() for bin_ in data.histogram],
            "scatter": [point.model_dump() for point in data.scatter],
            "fit": [fit.model_dump() for fit in data.fits],
            "band": [point.model_dump() for point in data.bands],
        }
