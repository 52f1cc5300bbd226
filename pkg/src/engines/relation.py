"""
Relation Engine - synthesizes and verifies three-term contiguous relations.

Responsibility: turn three shift expressions into the normalized relation,
check it against the series, compare it with the second elimination order
and attach the divisibility pattern.
"""

import time
from typing import Optional, Sequence, Tuple, Union

from src.algebra.paramgroup import ShiftOp, parse_shift
from src.contiguous.divisibility import divisibility_pattern
from src.contiguous.ideal import verify_annihilates
from src.contiguous.synthesis import ThreeTermRelation, relations_agree, three_term, three_term_alternative
from src.engines.base_engine import BaseEngine
from src.models.codec import render_relation
from src.models.schemas import RelationReport
from src.utils.errors import PreconditionError


ShiftLike = Union[str, ShiftOp]


class RelationEngine(BaseEngine):
    """
    Relation Engine: three_term plus its checks.

    Example:
        engine = RelationEngine()
        relation, report = engine.run(["A", "1", "Z"])
        # report.text == "(-1 * a + 1) * A + -1 + a * Z"
    """

    def __init__(self):
        super().__init__("RelationEngine")

    def execute(
        self,
        shifts: Sequence[ShiftLike],
        truncation: Optional[int] = None,
        cross_check: bool = True,
    ) -> Tuple[ThreeTermRelation, RelationReport]:
        """
        Args:
            shifts: Three shift expressions or ShiftOps
            truncation: Series order for verification (defaults to config)
            cross_check: Also synthesize along the second induction order

        Raises:
            ParseError: a shift expression does not parse
            PreconditionError: not exactly three shifts, or shifts repeat
        """
        if len(shifts) != 3:
            raise PreconditionError(f"a relation needs three shifts, got {len(shifts)}", operation="relation")
        parsed = [s if isinstance(s, ShiftOp) else parse_shift(s) for s in shifts]
        K = truncation or self.config.series.truncation
        start = time.perf_counter()

        rel = three_term(*parsed)
        verified = verify_annihilates(rel.to_operator(), K)
        if verified:
            rel = ThreeTermRelation(rel.shifts, rel.coeffs, K)
        else:
            self.logger.warning("synthesized relation failed the series check", shifts=rel.to_text())

        agrees = relations_agree(rel, three_term_alternative(*parsed)) if cross_check else None

        patterns = []
        for variable in ("a", "b"):
            try:
                patterns.append(divisibility_pattern(rel, variable))
            except PreconditionError:
                continue

        report = RelationReport(
            relation=render_relation(rel),
            text=rel.to_text(),
            verified=verified,
            truncation=K,
            alternative_agrees=agrees,
            divisibility=patterns,
            elapsed_seconds=round(time.perf_counter() - start, 4),
        )
        return rel, report
