"""Exact ideal-membership decision by three-term elimination."""

from dataclasses import dataclass
from typing import List

from src.algebra.diffop import DiffOperator
from src.algebra.exactalg import RationalFunc
from src.contiguous.synthesis import three_term
from src.utils.logger import get_logger


logger = get_logger("contiguous.membership")


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    residual: DiffOperator
    steps: int
    eliminated: List[str]


def reduce_operator(D: DiffOperator) -> MembershipResult:
    """
    Eliminate support shifts until at most two remain.

    Each step takes the shift of largest degree X and the next two support
    shifts Y, W, and subtracts the multiple of three_term(X, Y, W) that
    cancels X. The length drops by at least one per step. A nonzero
    remainder of length <= 2 is never in I, so D is in I iff the remainder
    is zero.
    """
    current = D
    steps = 0
    eliminated: List[str] = []
    while current.length >= 3:
        X, Y, W = current.support()[:3]
        rel = three_term(X, Y, W)
        factor = current.coeff(X) / RationalFunc.from_laurent(rel.coeffs[0])
        current = current - rel.to_operator().left_scale(factor)
        steps += 1
        eliminated.append(X.to_text())
    logger.debug("reduction finished", steps=steps, residual_length=current.length)
    return MembershipResult(current.is_zero, current, steps, eliminated)


def ideal_membership(D: DiffOperator) -> bool:
    """True iff D annihilates 2phi1."""
    return reduce_operator(D).member
