"""Membership Engine - exact ideal membership for a user operator."""

from typing import Optional, Tuple

from src.algebra.diffop import DiffOperator
from src.contiguous.ideal import verify_annihilates
from src.contiguous.membership import MembershipResult, reduce_operator
from src.engines.base_engine import BaseEngine
from src.models.codec import render_operator
from src.models.schemas import MembershipReport


class MembershipEngine(BaseEngine):
    """
    Membership Engine: reduce an operator by three-term relations.

    The optional series cross-check is independent of the reduction; the two
    must agree for operators in I.
    """

    def __init__(self):
        super().__init__("MembershipEngine")

    def execute(
        self,
        D: DiffOperator,
        series_check: Optional[bool] = None,
        truncation: Optional[int] = None,
    ) -> Tuple[MembershipResult, MembershipReport]:
        if series_check is None:
            series_check = self.config.membership.get("series_crosscheck", False)

        result = reduce_operator(D)
        crosscheck = None
        if series_check:
            crosscheck = verify_annihilates(D, truncation or self.config.series.truncation)
            if crosscheck != result.member:
                self.logger.warning("series check disagrees with the reduction",
                                    member=result.member, series=crosscheck)

        report = MembershipReport(
            member=result.member,
            initial_length=D.length,
            reduction_steps=result.steps,
            residual_length=result.residual.length,
            residual=None if result.member else render_operator(result.residual),
            series_check=crosscheck,
        )
        return result, report
