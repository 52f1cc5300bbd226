"""
Symmetry Engine - numerical verification of the Heine group and the
prefactor identities of the excluded matrix.
"""

from typing import Iterable, List, Optional

from src.algebra.qterm import Transformation
from src.classify.group import heine_group
from src.classify.lemimp import excluded_matrix_report
from src.engines.base_engine import BaseEngine
from src.models.schemas import EvalConfig, IdentityCheck, SymmetryReport, VerificationSuiteReport
from src.numerics.verify import qbinomial_check, series_consistency, verify_g_ratios_sampled, verify_symmetry
from src.utils.errors import PreconditionError


class SymmetryEngine(BaseEngine):
    """
    Symmetry Engine: verify_symmetry for each requested group element.

    mpmath keeps its working precision in a process-wide context, so the
    samples are evaluated sequentially.
    """

    def __init__(self):
        super().__init__("SymmetryEngine")

    def _select(self, words: Optional[Iterable[str]]) -> List[Transformation]:
        elements = heine_group(self.config.classification.group_safety_bound)
        if not words:
            return elements
        by_word = {t.word or "1": t for t in elements}
        chosen = []
        for word in words:
            if word not in by_word:
                raise PreconditionError(
                    f"'{word}' is not a word of the Heine group listing; known: {sorted(by_word)}",
                    operation="verify-symmetry",
                )
            chosen.append(by_word[word])
        return chosen

    def execute(
        self,
        cfg: EvalConfig,
        words: Optional[Iterable[str]] = None,
        g_ratios: bool = False,
        identities: bool = False,
    ) -> VerificationSuiteReport:
        """
        Args:
            cfg: Precision, tolerance, sample count and seed
            words: Group words to check (defaults to all twelve)
            g_ratios: Also check the prefactor shift ratios and the excluded matrix
            identities: Also run the q-binomial and series-consistency oracles
        """
        reports: List[SymmetryReport] = []
        for t in self._select(words):
            report = verify_symmetry(t, cfg.samples, cfg)
            if not report.passed:
                self.logger.warning("symmetry check failed", word=t.word, max_rel_error=report.max_rel_error)
            reports.append(report)

        suite = VerificationSuiteReport(symmetries=reports, precision=cfg.precision)
        if g_ratios:
            suite.ratios = verify_g_ratios_sampled(cfg.samples, cfg)
            suite.excluded_matrix = excluded_matrix_report()
        if identities:
            checks: List[IdentityCheck] = [qbinomial_check(j, 10, cfg) for j in (1, 2, 3)]
            checks.append(series_consistency(self.config.series.truncation, 5, cfg))
            suite.identities = checks
        return suite
