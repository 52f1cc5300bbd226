"""
The excluded matrix L_imp: (a, b, c, z) -> (qa/c, qb/c, q^2/c, z).

If h L_imp were a symmetry, conjugating P_a, P_b and the ABC relation would
land in I, and each image would be a multiple of the three-term relation on
its shifts. That pins down the shift ratios P(h)/h. They coincide with the
ratios of the theta quotient g, and L_imp preserves the filter identity, so
neither test rules L_imp out; the exclusion needs an argument outside this
package.
"""

from typing import Dict, List, Tuple

from src.algebra.diffop import DiffOperator
from src.algebra.exactalg import RationalFunc
from src.algebra.paramgroup import ParamMatrix, ShiftOp, act_on_function, conjugate_shift, excluded_matrix
from src.algebra.qterm import g_prefactor, g_stated_ratios, shift_ratio
from src.classify.invariance import eqnow_invariance
from src.contiguous.ideal import abc_relation, generator
from src.contiguous.synthesis import three_term
from src.models.schemas import ExcludedMatrixReport, ForcedRatioRecord
from src.utils.errors import PreconditionError


def forced_ratios(L: ParamMatrix, D: DiffOperator) -> Dict[ShiftOp, RationalFunc]:
    """
    P'(h)/h for every non-identity shift P' of h L D (h L)^-1, assuming it is in I.

    D must have three terms, one of them on the identity shift.
    """
    identity = ShiftOp.identity()
    if D.length != 3 or D.coeff(identity).is_zero:
        raise PreconditionError("need a three-term operator with an identity term", operation="forced_ratios")
    images = {conjugate_shift(L, P): act_on_function(L, r) for P, r in D.items()}
    shifts = tuple(images)
    rel = three_term(*shifts)
    e0 = RationalFunc.from_laurent(rel.coeff(identity))
    d0 = images[identity]
    out = {}
    for P in shifts:
        if P == identity:
            continue
        e = RationalFunc.from_laurent(rel.coeff(P))
        out[P] = images[P] * e0 / (d0 * e)
    return out


def _to_unit_step(P: ShiftOp, ratio: RationalFunc) -> Tuple[ShiftOp, RationalFunc]:
    """Turn S^-1(h)/h into S(h)/h = 1 / S(S^-1(h)/h) for a negative unit step."""
    if sum(P.k) < 0:
        S = P.inverse()
        return S, S.act(ratio).inverse()
    return P, ratio


def excluded_matrix_report() -> ExcludedMatrixReport:
    """Forced ratios versus the stated ratios versus the ratios of g."""
    L = excluded_matrix()
    stated = dict(g_stated_ratios())
    g = g_prefactor()

    sources = [("P_a", generator("P_a")), ("P_b", generator("P_b")), ("ABC relation", abc_relation())]
    records: List[ForcedRatioRecord] = []
    for name, D in sources:
        for P, ratio in forced_ratios(L, D).items():
            S, ratio = _to_unit_step(P, ratio)
            expected = stated.get(S)
            records.append(ForcedRatioRecord(
                shift=S.to_list(),
                forced_by=name,
                forced=ratio.to_text(),
                stated=expected.to_text() if expected is not None else "",
                forced_matches=expected is not None and ratio == expected,
                prefactor_matches=expected is not None and shift_ratio(g, S) == expected,
            ))

    return ExcludedMatrixReport(
        matrix=L.flat(),
        preserves_filter_identity=eqnow_invariance(L),
        ratios=records,
    )
