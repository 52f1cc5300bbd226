"""Group Engine - lists the Heine group and checks its structure."""

from src.algebra.paramgroup import ShiftOp, conjugate_shift
from src.algebra.qterm import trans_order
from src.classify.group import generator_orders, heine_group
from src.classify.invariance import eqnow_invariance
from src.engines.base_engine import BaseEngine
from src.models.codec import render_transformation
from src.models.schemas import GroupElementRecord, GroupReport


class GroupEngine(BaseEngine):
    """Group Engine: the twelve transformations generated by t_h and t_ab."""

    def __init__(self):
        super().__init__("GroupEngine")

    def execute(self) -> GroupReport:
        bound = self.config.classification.group_safety_bound
        elements = heine_group(bound)
        Z = ShiftOp.of(0, 0, 0, 1)

        invariance = {
            t.word or "1": eqnow_invariance(t.mat)
            for t in elements
            if conjugate_shift(t.mat, Z) == Z
        }
        if not all(invariance.values()):
            self.logger.warning("a Z-fixing matrix changes the filter identity", results=invariance)

        return GroupReport(
            order=len(elements),
            elements=[
                GroupElementRecord(word=t.word, order=trans_order(t, bound), transformation=render_transformation(t))
                for t in elements
            ],
            generator_orders=generator_orders(bound),
            z_fixing_invariance=invariance,
        )
