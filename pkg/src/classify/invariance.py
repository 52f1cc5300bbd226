"""Invariance of the filter identity under matrices fixing Z, and reduction of survivors to Z."""

from typing import Optional

from src.algebra.paramgroup import ParamMatrix, ShiftOp, act_on_function, conjugate_shift
from src.classify.filter import eqjan3_lhs
from src.classify.group import heine_group
from src.utils.errors import PreconditionError


Z = ShiftOp.of(0, 0, 0, 1)


def eqnow_invariance(L: ParamMatrix) -> bool:
    """
    True iff L leaves the left side of the filter identity unchanged.

    Raises:
        PreconditionError: L Z L^-1 is not Z
    """
    if conjugate_shift(L, Z) != Z:
        raise PreconditionError("the matrix must fix Z under conjugation", operation="eqnow_invariance")
    lhs = eqjan3_lhs()
    return act_on_function(L, lhs) == lhs


def reduce_to_z(Y: ShiftOp) -> Optional[ParamMatrix]:
    """A Heine-group matrix L with L Y L^-1 = Z, or None if there is none."""
    for t in heine_group():
        if conjugate_shift(t.mat, Y) == Z:
            return t.mat
    return None
