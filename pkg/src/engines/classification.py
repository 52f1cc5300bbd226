"""
Classification Engine - runs the candidate filter and the excluded-matrix analysis.
"""

from typing import Optional

from src.classify.filter import run_classification
from src.classify.lemimp import excluded_matrix_report
from src.engines.base_engine import BaseEngine
from src.models.schemas import ClassificationReport, ExcludedMatrixReport


class ClassificationEngine(BaseEngine):
    """Classification Engine: candidates, filter, survivors."""

    def __init__(self):
        super().__init__("ClassificationEngine")

    def execute(self, workers: Optional[int] = None) -> ClassificationReport:
        report = run_classification(workers)
        if report.missing_table_orbits:
            self.logger.info("candidate orbits without a table row",
                             orbits=report.missing_table_orbits)
        return report

    def excluded_matrix(self) -> ExcludedMatrixReport:
        """Exact shift ratios forced on a prefactor of the excluded matrix."""
        return excluded_matrix_report()
