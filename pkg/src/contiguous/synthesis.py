"""
Three-term contiguous relations.

Modulo I every shift X reduces to X = (u_X Z + v_X) / d_X with u_X, v_X, d_X
Laurent polynomials, and 1, Z are independent modulo I (there are no two-term
elements). The reduction is built by induction on the degree of X from the
generators: writing X = S Y with S a unit shift,

    X = S(u_Y) / S(d_Y) * SZ + S(v_Y) / S(d_Y) * S,

with SZ and S reduced from the generators and from Z R_z. For three distinct
shifts the coefficient vector (p_1, p_2, p_3) is orthogonal to both (u_i / d_i)
and (v_i / d_i), hence proportional to their cross product.
"""

from dataclasses import dataclass, field
from functools import reduce
from threading import RLock
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from src.algebra.diffop import DiffOperator, left_clear, op_multiply
from src.algebra.exactalg import LaurentPoly, Monomial, exact_quotient, poly_content_gcd, poly_gcd
from src.algebra.paramgroup import ONE, Z, ShiftOp
from src.contiguous.ideal import generators
from src.utils.errors import PreconditionError, SynthesisError
from src.utils.logger import get_logger


logger = get_logger("contiguous.synthesis")

UNIT_STEPS: Tuple[ShiftOp, ...] = tuple(
    ShiftOp(tuple(sign * int(i == axis) for i in range(4)))
    for axis in range(4)
    for sign in (1, -1)
)


class Reduction(NamedTuple):
    """X = (u Z + v) / d modulo I, with gcd(u, v, d) = 1."""
    u: LaurentPoly
    v: LaurentPoly
    d: LaurentPoly


def _lowest_terms(u: LaurentPoly, v: LaurentPoly, d: LaurentPoly) -> Reduction:
    g = poly_gcd(d, u)
    if g.support_size > 1:
        g = poly_gcd(g, v)
    if g.support_size > 1:
        u, v, d = (exact_quotient(p, g) if not p.is_zero else p for p in (u, v, d))
    return Reduction(u, v, d)


@dataclass(frozen=True)
class ThreeTermRelation:
    """p_1 X_1 + p_2 X_2 + p_3 X_3 in I with coprime polynomial coefficients."""
    shifts: Tuple[ShiftOp, ShiftOp, ShiftOp]
    coeffs: Tuple[LaurentPoly, LaurentPoly, LaurentPoly]
    verified_to_order: Optional[int] = field(default=None, compare=False)

    def to_operator(self) -> DiffOperator:
        return DiffOperator({X: p for X, p in zip(self.shifts, self.coeffs)})

    def coeff(self, X: ShiftOp) -> LaurentPoly:
        return self.coeffs[self.shifts.index(X)]

    def to_text(self) -> str:
        pieces = []
        for X, p in zip(self.shifts, self.coeffs):
            text = p.to_text() if p.support_size == 1 else f"({p.to_text()})"
            pieces.append(text if X.is_identity else f"{text} * {X.to_text()}")
        return " + ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()


def normalize_polys(polys: Sequence[LaurentPoly], sign_index: int, coprime: bool = False) -> Tuple[LaurentPoly, ...]:
    """
    Scale polynomial coefficients so that they have gcd 1, no common monomial,
    integral content 1, and entry ``sign_index`` has a positive leading
    coefficient. ``coprime`` skips the polynomial gcd when it is known to be 1.
    """
    if all(p.is_zero for p in polys):
        raise SynthesisError("cannot normalize the zero relation")
    polys = list(polys)
    if not coprime:
        common = poly_content_gcd(polys)
        if common.support_size > 1:
            polys = [exact_quotient(p, common) if not p.is_zero else p for p in polys]

    low = None
    for p in polys:
        for exp, _ in p.terms():
            low = list(exp) if low is None else [min(x, y) for x, y in zip(low, exp)]
    unit = Monomial(tuple(low)).inverse()
    polys = [p.shift_monomial(unit) for p in polys]

    content = reduce(QQ.gcd, (p.poly.primitive()[0] for p in polys if not p.is_zero))
    if polys[sign_index].leading_coeff() < 0:
        content = -content
    return tuple(p.scale(QQ.one / content) for p in polys)


class ReductionTable:
    """
    Memoized reductions of shifts to the basis {Z, 1} modulo I.

    ``rule`` selects the induction step X = S Y: "largest" peels a unit shift
    off the coordinate of largest |k| (ties in the order a, b, c, z),
    "smallest" off the coordinate of smallest nonzero |k| (ties in the order
    z, c, b, a). Both give the same reductions; the second exists to
    cross-check the first. The table is safe to share between threads.
    """

    def __init__(self, rule: str = "largest"):
        if rule not in ("largest", "smallest"):
            raise PreconditionError(f"unknown induction rule '{rule}'", operation="ReductionTable")
        self.rule = rule
        self._memo: Dict[ShiftOp, Reduction] = {}
        self._lock = RLock()
        self._seed()

    def _seed(self) -> None:
        zero, one = LaurentPoly.zero(), LaurentPoly.one()
        self._memo[ONE] = Reduction(zero, one, one)
        self._memo[Z] = Reduction(one, zero, one)
        # each generator relates one unit shift to Z and 1
        for gen in generators():
            (X,) = [P for P in gen.support() if P not in (ONE, Z)]
            self._memo[X] = _solve_for(gen, X)
        # Z^2 from Z R_z
        z_rz = op_multiply(DiffOperator.shift(Z), generators()[6])
        self._memo[Z * Z] = _solve_for(z_rz, Z * Z)

    def __len__(self) -> int:
        return len(self._memo)

    def reduce(self, X: ShiftOp) -> Reduction:
        """The reduction X = (u Z + v) / d modulo I."""
        with self._lock:
            cached = self._memo.get(X)
            if cached is not None:
                return cached
            red = self._compute(X)
            self._memo[X] = red
            return red

    def _compute(self, X: ShiftOp) -> Reduction:
        S = X * Z.inverse()
        if S in UNIT_STEPS and S not in (Z, Z.inverse()):
            # X = Z S: lift the reduction of S through Z
            return self._lift(Z, self.reduce(S))
        S = self._step(X)
        return self._lift(S, self.reduce(X * S.inverse()))

    def _lift(self, S: ShiftOp, red: Reduction) -> Reduction:
        """Reduction of S Y from the reduction of Y."""
        su, sv, sd = S.act_poly(red.u), S.act_poly(red.v), S.act_poly(red.d)
        u1, v1, d1 = self.reduce(S * Z)
        u2, v2, d2 = self.reduce(S)
        if d1 == d2:
            return _lowest_terms(su * u1 + sv * u2, su * v1 + sv * v2, sd * d1)
        return _lowest_terms(su * u1 * d2 + sv * u2 * d1, su * v1 * d2 + sv * v2 * d1, sd * d1 * d2)

    def _step(self, X: ShiftOp) -> ShiftOp:
        axes = [i for i in range(4) if X.k[i]]
        if self.rule == "largest":
            axis = max(axes, key=lambda i: (abs(X.k[i]), -i))
        else:
            axis = min(axes, key=lambda i: (abs(X.k[i]), -i))
        k = [0, 0, 0, 0]
        k[axis] = 1 if X.k[axis] > 0 else -1
        return ShiftOp(tuple(k))


def _solve_for(D: DiffOperator, X: ShiftOp) -> Reduction:
    """From D = d_X X + d_Z Z + d_1 in I, read off X = -(d_Z Z + d_1) / d_X."""
    cleared = left_clear(D)
    return _lowest_terms(-cleared.coeff(Z).num, -cleared.coeff(ONE).num, cleared.coeff(X).num)


_tables: Dict[str, ReductionTable] = {}
_tables_lock = RLock()


def reduction_table(rule: str = "largest") -> ReductionTable:
    """Process-wide reduction table for an induction rule."""
    with _tables_lock:
        if rule not in _tables:
            _tables[rule] = ReductionTable(rule)
        return _tables[rule]


def normal_form_to_Z1(X: ShiftOp, rule: str = "largest") -> Tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """
    Polynomials (p_x, p_z, p_1) with p_x X + p_z Z + p_1 in I.

    X = 1 gives (1, 0, -1) and X = Z gives (1, -1, 0). Otherwise the triple
    is normalized with p_x having a positive leading coefficient.
    """
    one, zero = LaurentPoly.one(), LaurentPoly.zero()
    if X == ONE:
        return one, zero, -one
    if X == Z:
        return one, -one, zero
    u, v, d = reduction_table(rule).reduce(X)
    return normalize_polys((d, -u, -v), sign_index=0, coprime=True)


def three_term(X1: ShiftOp, X2: ShiftOp, X3: ShiftOp, rule: str = "largest") -> ThreeTermRelation:
    """
    The element p_1 X_1 + p_2 X_2 + p_3 X_3 of I, unique up to a factor in R.

    Coefficients are coprime polynomials with no common monomial and integral
    content 1; p_3 has a positive leading coefficient.

    Raises:
        PreconditionError: the shifts are not pairwise distinct
        SynthesisError: a coefficient vanishes
    """
    shifts = (X1, X2, X3)
    if len(set(shifts)) != 3:
        raise PreconditionError(
            f"shifts must be pairwise distinct: {[X.to_text() for X in shifts]}",
            operation="three_term",
        )
    table = reduction_table(rule)
    (u1, v1, d1), (u2, v2, d2), (u3, v3, d3) = (table.reduce(X) for X in shifts)
    # cross product of (u_i / d_i) and (v_i / d_i), times d_1 d_2 d_3
    lam = (d1 * (u2 * v3 - u3 * v2), d2 * (u3 * v1 - u1 * v3), d3 * (u1 * v2 - u2 * v1))
    if any(p.is_zero for p in lam):
        raise SynthesisError(
            "synthesized relation has a vanishing coefficient",
            shifts=[X.to_list() for X in shifts],
        )
    return ThreeTermRelation(shifts, normalize_polys(lam, sign_index=2))


def three_term_alternative(X1: ShiftOp, X2: ShiftOp, X3: ShiftOp) -> ThreeTermRelation:
    """three_term computed along the second induction order."""
    return three_term(X1, X2, X3, rule="smallest")


def relations_agree(r1: ThreeTermRelation, r2: ThreeTermRelation) -> bool:
    """Same shifts and coefficients proportional (equal after normalization)."""
    if r1.shifts != r2.shifts:
        return False
    return normalize_polys(r1.coeffs, 2) == normalize_polys(r2.coeffs, 2)


def shifts_with_degree_at_most(bound: int) -> List[ShiftOp]:
    """All shifts with |k_a| + |k_b| + |k_c| + |k_z| <= bound."""
    rng = range(-bound, bound + 1)
    box = (ShiftOp((ka, kb, kc, kz)) for ka in rng for kb in rng for kc in rng for kz in rng)
    return [X for X in box if X.degree <= bound]
