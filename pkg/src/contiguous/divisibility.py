"""
Divisibility patterns of three-term relations.

Order the shifts so that k_1 > k_2 > k_3 in one of a, b. Then

    (x - q^-j) divides p_1 for k_2 <= j < k_1,
    and does not divide p_1 for k_3 <= j < k_2,
    p_2 for k_3 <= j < k_1,
    p_3 for k_2 <= j < k_1.
"""

from typing import List, Optional

from src.algebra.exactalg import A_IDX, B_IDX, VARIABLES, divides_at_qpower
from src.contiguous.synthesis import ThreeTermRelation
from src.models.schemas import DivisibilityClaim, DivisibilityReport
from src.utils.errors import PreconditionError


def _claims(rel: ThreeTermRelation, var: int) -> DivisibilityReport:
    order = sorted(range(3), key=lambda i: -rel.shifts[i].k[var])
    p1, p2, p3 = (rel.coeffs[i] for i in order)
    k1, k2, k3 = (rel.shifts[i].k[var] for i in order)

    claims: List[DivisibilityClaim] = []

    def claim(name: str, poly, lo: int, hi: int, expected: bool) -> None:
        for j in range(lo, hi):
            claims.append(DivisibilityClaim(
                polynomial=name,
                j=j,
                expected_divisible=expected,
                observed_divisible=divides_at_qpower(poly, var, j),
            ))

    claim("p_1", p1, k2, k1, True)
    claim("p_1", p1, k3, k2, False)
    claim("p_2", p2, k3, k1, False)
    claim("p_3", p3, k2, k1, False)
    return DivisibilityReport(variable=VARIABLES[var], exponents=[k1, k2, k3], claims=claims)


def _distinct(rel: ThreeTermRelation, var: int) -> bool:
    return len({X.k[var] for X in rel.shifts}) == 3


def divisibility_pattern(rel: ThreeTermRelation, variable: Optional[str] = None) -> DivisibilityReport:
    """
    Check every divisibility claim for ``rel`` in ``a`` (or ``b``).

    With no variable given, ``a`` is used when its exponents are pairwise
    distinct and ``b`` otherwise.

    Raises:
        PreconditionError: the exponents in the chosen variable are not pairwise distinct
    """
    if variable is None:
        if _distinct(rel, A_IDX):
            return _claims(rel, A_IDX)
        if _distinct(rel, B_IDX):
            return _claims(rel, B_IDX)
        raise PreconditionError(
            "neither the a- nor the b-exponents of the shifts are pairwise distinct",
            operation="divisibility_pattern",
        )
    var = {"a": A_IDX, "b": B_IDX}.get(variable)
    if var is None:
        raise PreconditionError(f"divisibility patterns exist for a and b, not '{variable}'",
                                operation="divisibility_pattern")
    if not _distinct(rel, var):
        raise PreconditionError(
            f"{variable}-exponents of the shifts are not pairwise distinct",
            operation="divisibility_pattern",
        )
    return _claims(rel, var)
