"""
Generator Engine - verifies the ideal generators against the exact series.

Runs verify_annihilates on the seven generators and on the ABC relation,
and optionally rebuilds five of the generators from P_a.
"""

import time
from typing import Iterable, Optional

from src.algebra.diffop import DiffOperator
from src.contiguous.derivation import check_derivations
from src.contiguous.ideal import GENERATOR_NAMES, abc_relation, generator, verify_annihilates
from src.engines.base_engine import BaseEngine
from src.models.schemas import GeneratorCheck, GeneratorReport


class GeneratorEngine(BaseEngine):
    """Generator Engine: the series oracle applied to every listed generator."""

    def __init__(self):
        super().__init__("GeneratorEngine")

    def _check(self, name: str, D: DiffOperator, K: int, method: str) -> GeneratorCheck:
        start = time.perf_counter()
        passed = verify_annihilates(D, K, method=method)
        if not passed:
            self.logger.warning("generator does not annihilate the series", generator=name, truncation=K)
        return GeneratorCheck(
            name=name, passed=passed, truncation=K, elapsed_seconds=round(time.perf_counter() - start, 4),
        )

    def execute(
        self,
        truncation: Optional[int] = None,
        names: Optional[Iterable[str]] = None,
        method: str = "ratio",
        include_abc: bool = True,
        derive: bool = False,
    ) -> GeneratorReport:
        """
        Args:
            truncation: Series order (defaults to config)
            names: Subset of generator names (defaults to all seven)
            method: "ratio" or "series", see verify_annihilates
            include_abc: Also check the ABC relation
            derive: Rebuild P_b, P_c, Q_a, Q_b, R_z from P_a and compare
        """
        K = truncation or self.config.series.truncation
        checks = [self._check(name, generator(name), K, method) for name in (names or GENERATOR_NAMES)]
        report = GeneratorReport(truncation=K, checks=checks)
        if include_abc:
            report.abc_relation = self._check("ABC relation", abc_relation(), K, method)
        if derive:
            report.derivations = check_derivations()
        self.logger.info("generators checked", passed=sum(c.passed for c in checks), total=len(checks))
        return report

    def verify_operator(self, name: str, D: DiffOperator, truncation: Optional[int] = None) -> GeneratorCheck:
        """The same check for an arbitrary operator, e.g. a mutated generator."""
        return self._check(name, D, truncation or self.config.series.truncation, "ratio")
