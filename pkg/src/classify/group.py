"""The group generated by Heine's transformation t_h and the swap t_ab."""

from collections import deque
from functools import lru_cache
from typing import Dict, List, Optional

from src.algebra.paramgroup import ParamMatrix, ShiftOp, conjugate_shift
from src.algebra.qterm import Transformation, t_ab, t_h, trans_multiply, trans_order
from src.utils.config import get_config
from src.utils.errors import ClosureError, VerificationError
from src.utils.logger import get_logger


logger = get_logger("classify.group")

EXPECTED_ORDER = 12


def generate_closure(gens: List[Transformation], bound: int) -> List[Transformation]:
    """
    Breadth-first closure of ``gens`` under right multiplication.

    Elements keep the shortest word that reaches them.

    Raises:
        ClosureError: more than ``bound`` distinct elements
    """
    identity = Transformation.identity()
    elements: List[Transformation] = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for gen in gens:
            product = trans_multiply(current, gen)
            if product in seen:
                continue
            seen.add(product)
            elements.append(product)
            queue.append(product)
            if len(elements) > bound:
                raise ClosureError(
                    f"closure exceeds {bound} elements; canonical forms are not being detected",
                    bound=bound,
                )
    return elements


def generator_orders(bound: int = 100) -> Dict[str, int]:
    th, tab = t_h(), t_ab()
    return {
        "t_h": trans_order(th, bound),
        "t_ab": trans_order(tab, bound),
        "t_h t_ab": trans_order(trans_multiply(th, tab), bound),
    }


@lru_cache(maxsize=None)
def _cached_group(bound: int) -> tuple:
    return tuple(generate_closure([t_h(), t_ab()], bound))


def heine_group(bound: Optional[int] = None, verify: bool = True) -> List[Transformation]:
    """
    All elements of <t_h, t_ab>, identity first.

    Raises:
        ClosureError: the closure exceeds the safety bound
        VerificationError: the group is not of order 12 with generator orders 2, 2 and 6
    """
    bound = bound or get_config().classification.group_safety_bound
    elements = list(_cached_group(bound))
    if verify:
        orders = generator_orders(bound)
        expected = {"t_h": 2, "t_ab": 2, "t_h t_ab": 6}
        if len(elements) != EXPECTED_ORDER or orders != expected:
            raise VerificationError(
                "Heine group has the wrong structure",
                details={"order": len(elements), "generator_orders": orders},
            )
    logger.debug("Heine group generated", order=len(elements))
    return elements


def z_fixing_matrices() -> List[ParamMatrix]:
    """Group matrices L with L Z L^-1 = Z."""
    Z = ShiftOp.of(0, 0, 0, 1)
    return [t.mat for t in heine_group() if conjugate_shift(t.mat, Z) == Z]
