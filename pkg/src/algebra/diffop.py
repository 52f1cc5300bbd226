"""
The operator ring D = R # N.

An operator is a finite sum r_P * P of shifts with rational coefficients.
Products twist coefficients by shifts: (r P)(s S) = r P(s) (P S).
"""

from __future__ import annotations

from functools import reduce
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from sympy.polys.domains import QQ

from src.algebra.exactalg import (
    NVARS,
    Q_IDX,
    Z_IDX,
    LaurentPoly,
    Monomial,
    RationalFunc,
    as_rational,
    exact_quotient,
    parse_rational,
    poly_content_gcd,
    poly_lcm,
)
from src.algebra.paramgroup import ShiftOp, act_on_function, conjugate_shift, parse_shift
from src.algebra.qterm import Transformation, shift_ratio
from src.algebra.series import FormalSeries
from src.utils.errors import SeriesError


Coefficient = Union[RationalFunc, LaurentPoly, int]


class DiffOperator:
    """
    An element of D, stored as shift -> nonzero coefficient.

    Immutable; every operation returns a new operator.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[ShiftOp, Coefficient]] = None):
        clean: Dict[ShiftOp, RationalFunc] = {}
        for shift, coeff in (terms or {}).items():
            coeff = as_rational(coeff)
            if not coeff.is_zero:
                clean[shift] = coeff
        self._terms = clean
        self._hash: Optional[int] = None

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "DiffOperator":
        return cls()

    @classmethod
    def one(cls) -> "DiffOperator":
        return cls({ShiftOp.identity(): RationalFunc.one()})

    @classmethod
    def shift(cls, P: ShiftOp, coeff: Coefficient = 1) -> "DiffOperator":
        return cls({P: coeff})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[ShiftOp, Coefficient]]) -> "DiffOperator":
        """Sum of coeff * shift, combining repeated shifts."""
        acc: Dict[ShiftOp, RationalFunc] = {}
        for shift, coeff in pairs:
            acc[shift] = acc.get(shift, RationalFunc.zero()) + as_rational(coeff)
        return cls(acc)

    @classmethod
    def from_catalog(cls, terms: Iterable[Mapping]) -> "DiffOperator":
        """Build from catalog terms ``[{"shift": [...] or "A Z^-1", "coeff": "..."}]``."""
        pairs = []
        for term in terms:
            shift = term["shift"]
            P = parse_shift(shift) if isinstance(shift, str) else ShiftOp(tuple(int(x) for x in shift))
            pairs.append((P, parse_rational(str(term["coeff"]))))
        return cls.from_pairs(pairs)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def length(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        return len(self._terms) == 1

    def support(self) -> List[ShiftOp]:
        """Shifts with nonzero coefficient, highest degree first."""
        return sorted(self._terms, key=display_key)

    def coeff(self, P: ShiftOp) -> RationalFunc:
        return self._terms.get(P, RationalFunc.zero())

    def items(self) -> Iterator[Tuple[ShiftOp, RationalFunc]]:
        for P in self.support():
            yield P, self._terms[P]

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        acc = dict(self._terms)
        for P, r in other._terms.items():
            acc[P] = acc[P] + r if P in acc else r
        return DiffOperator(acc)

    def __neg__(self) -> "DiffOperator":
        return DiffOperator({P: -r for P, r in self._terms.items()})

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + (-other)

    def __mul__(self, other) -> "DiffOperator":
        if isinstance(other, DiffOperator):
            return op_multiply(self, other)
        if isinstance(other, ShiftOp):
            return op_multiply(self, DiffOperator.shift(other))
        return op_multiply(self, DiffOperator.shift(ShiftOp.identity(), other))

    def __rmul__(self, other) -> "DiffOperator":
        if isinstance(other, ShiftOp):
            return op_multiply(DiffOperator.shift(other), self)
        return self.left_scale(as_rational(other))

    def left_scale(self, r: RationalFunc) -> "DiffOperator":
        """r * D: every coefficient multiplied by r."""
        if r.is_zero:
            return DiffOperator.zero()
        return DiffOperator({P: r * s for P, s in self._terms.items()})

    # ------------------------------------------------------------------
    # Conversion
    # ------------------------------------------------------------------

    def to_text(self) -> str:
        """E.g. ``(-1 * a + 1) * A + -1 + a * Z``."""
        if self.is_zero:
            return "0"
        return " + ".join(_term_text(P, r) for P, r in self.items())

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"DiffOperator({self.to_text()!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash


def display_key(P: ShiftOp) -> Tuple:
    """Order shifts by degree, then by exponent vector, both descending."""
    return (-P.degree, tuple(-x for x in P.k))


def _term_text(P: ShiftOp, r: RationalFunc) -> str:
    text = r.to_text()
    if not (r.den.is_one and r.num.support_size == 1):
        text = f"({text})"
    return text if P.is_identity else f"{text} * {P.to_text()}"


def op_multiply(D1: DiffOperator, D2: DiffOperator) -> DiffOperator:
    """(sum r_P P)(sum s_S S) = sum r_P P(s_S) (P S)."""
    pairs = []
    for P, r in D1._terms.items():
        for S, s in D2._terms.items():
            pairs.append((P * S, r * P.act(s)))
    return DiffOperator.from_pairs(pairs)


def conjugate_op(t: Transformation, D: DiffOperator) -> DiffOperator:
    """
    t D t^-1 for t = h L.

    A term r P goes to (h / P'(h)) L(r) P' with P' = L P L^-1.
    """
    if t.is_identity:
        return D
    pairs = []
    for P, r in D._terms.items():
        P_conj = conjugate_shift(t.mat, P)
        coeff = act_on_function(t.mat, r) / shift_ratio(t.term, P_conj)
        pairs.append((P_conj, coeff))
    return DiffOperator.from_pairs(pairs)


# ----------------------------------------------------------------------
# Normal forms
# ----------------------------------------------------------------------

def _min_exponents(polys: Iterable[LaurentPoly]) -> Monomial:
    low = [0] * NVARS
    first = True
    for p in polys:
        for exp, _ in p.terms():
            low = list(exp) if first else [min(x, y) for x, y in zip(low, exp)]
            first = False
    return Monomial(tuple(low))


def left_clear(D: DiffOperator) -> DiffOperator:
    """
    Left-multiply by the lcm of the coefficient denominators and by the monomial
    that removes negative exponents, so every coefficient is a polynomial.

    Left multiplication by a nonzero rational function keeps ideal membership.
    """
    if D.is_zero:
        return D
    den = reduce(poly_lcm, (r.den for r in D._terms.values()), LaurentPoly.one())
    cleared = {P: r.num * exact_quotient(den, r.den) for P, r in D._terms.items()}
    unit = _min_exponents(cleared.values()).inverse()
    return DiffOperator({P: p.shift_monomial(unit) for P, p in cleared.items()})


def normalize_operator(D: DiffOperator) -> DiffOperator:
    """
    Canonical primitive representative of R* D.

    Denominators are cleared, the polynomial gcd of the coefficients and any
    common monomial are removed, coefficients are made integral with content 1,
    and the coefficient of the first shift of :meth:`DiffOperator.support`
    gets a positive leading coefficient.
    """
    if D.is_zero:
        return D
    cleared = {P: r.num for P, r in left_clear(D)._terms.items()}
    common = poly_content_gcd(cleared.values())
    reduced = {P: exact_quotient(p, common) for P, p in cleared.items()}
    unit = _min_exponents(reduced.values()).inverse()
    reduced = {P: p.shift_monomial(unit) for P, p in reduced.items()}

    content = reduce(QQ.gcd, (p.poly.primitive()[0] for p in reduced.values()))
    lead = reduced[min(reduced, key=display_key)]
    if lead.leading_coeff() < 0:
        content = -content
    return DiffOperator({P: p.scale(QQ.one / content) for P, p in reduced.items()})


def operators_proportional(D1: DiffOperator, D2: DiffOperator) -> bool:
    """True when D1 = r D2 for a nonzero rational function r."""
    if D1.is_zero or D2.is_zero:
        return D1.is_zero and D2.is_zero
    return normalize_operator(D1) == normalize_operator(D2)


# ----------------------------------------------------------------------
# Series application
# ----------------------------------------------------------------------

def split_by_z(p: LaurentPoly) -> Dict[int, LaurentPoly]:
    """p = sum_j p_j z^j with p_j free of z; returns {j: p_j}."""
    groups: Dict[int, Dict[Tuple[int, ...], object]] = {}
    for exp, coeff in p.terms():
        rest = list(exp)
        rest[Z_IDX] = 0
        groups.setdefault(exp[Z_IDX], {})[tuple(rest)] = coeff
    return {j: LaurentPoly.from_terms(part) for j, part in groups.items()}


def z_expansion(r: RationalFunc, K: int) -> List[RationalFunc]:
    """
    Power series coefficients of r in z, up to z^K.

    Raises:
        SeriesError: r has a negative power of z, or its denominator vanishes at z = 0
    """
    num_parts = {j: RationalFunc.from_laurent(p) for j, p in split_by_z(r.num).items()}
    den_parts = {j: RationalFunc.from_laurent(p) for j, p in split_by_z(r.den).items()}
    if min(num_parts) < 0:
        raise SeriesError("coefficient has a negative power of z; clear it first")
    if 0 not in den_parts:
        raise SeriesError("coefficient denominator vanishes at z = 0; clear it first")
    # 1/den: inv_n = -(sum_{i>=1} d_i inv_{n-i}) / d_0
    inv: List[RationalFunc] = [den_parts[0].inverse()]
    for n in range(1, K + 1):
        acc = RationalFunc.zero()
        for i in range(1, n + 1):
            if i in den_parts:
                acc = acc + den_parts[i] * inv[n - i]
        inv.append(-(acc * inv[0]))
    out = []
    for n in range(K + 1):
        acc = RationalFunc.zero()
        for j, part in num_parts.items():
            if j <= n:
                acc = acc + part * inv[n - j]
        out.append(acc)
    return out


def apply_to_series(D: DiffOperator, S: FormalSeries, K: int) -> FormalSeries:
    """
    Coefficients of z^0..z^K of D applied to S.

    A shift P acts on sum s_n z^n by shifting a, b, c inside s_n and
    multiplying by q^(n k_z).

    Raises:
        SeriesError: a coefficient has no power series expansion in z, or S is too short
    """
    if K > S.order:
        raise SeriesError(f"series known to order {S.order}, requested {K}")
    out = [RationalFunc.zero() for _ in range(K + 1)]
    for P, r in D.items():
        expansion = z_expansion(r, K)
        shifted = []
        for n in range(K + 1):
            s_n = P.act(S[n])
            if P.k[3]:
                s_n = s_n * RationalFunc.monomial(Monomial.variable(Q_IDX, n * P.k[3]))
            shifted.append(s_n)
        for n in range(K + 1):
            for i in range(n + 1):
                if not expansion[i].is_zero:
                    out[n] = out[n] + expansion[i] * shifted[n - i]
    return FormalSeries(tuple(out))
