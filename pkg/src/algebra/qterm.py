"""
q-hypergeometric terms and the transformation group T = H x| G.

A QHypTerm is ``rat * prod (x; q)_inf ** mult`` over monomial bases x.
Canonical form: every base has q-exponent zero (q-power shifts are folded into
the rational part), except the pure q-power base which is normalized to
(q; q)_inf; multiplicities are nonzero and bases are distinct and sorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from src.algebra.exactalg import (
    Q_IDX,
    LaurentPoly,
    Monomial,
    RationalFunc,
    parse_laurent,
    parse_rational,
)
from src.algebra.paramgroup import (
    ParamMatrix,
    ShiftOp,
    act_on_function,
    act_on_monomial,
    heine_matrix,
    swap_matrix,
)
from src.utils.config import get_config
from src.utils.errors import ClosureError, FieldElementError, ParseError


Q_BASE = Monomial.variable(Q_IDX)

PochFactor = Tuple[Monomial, int]


def _one_minus(x: Monomial, q_power: int) -> RationalFunc:
    """1 - x q^j as a rational function."""
    mono = x * Monomial.variable(Q_IDX, q_power)
    return RationalFunc.from_laurent(LaurentPoly.one() - LaurentPoly.monomial(mono))


def finite_poch(x: Monomial, m: int) -> RationalFunc:
    """(x; q)_m for m >= 0, and (x; q)_m = 1 / prod_{j=1..|m|} (1 - x q^-j) for m < 0."""
    result = RationalFunc.one()
    if m >= 0:
        for j in range(m):
            result = result * _one_minus(x, j)
        return result
    for j in range(1, -m + 1):
        result = result * _one_minus(x, -j)
    return result.inverse()


def monomial_from_text(text: str) -> Monomial:
    """Parse a base such as ``c/a`` or ``q**2/c`` into a Monomial."""
    p = parse_laurent(text)
    terms = p.terms()
    if len(terms) != 1 or terms[0][1] != 1:
        raise ParseError("a Pochhammer base must be a monomial with coefficient 1", text=text)
    return Monomial(terms[0][0])


class QHypTerm:
    """An element of H: rational part times powers of infinite q-Pochhammer symbols."""

    __slots__ = ("rat", "poch", "_hash")

    def __init__(self, rat: RationalFunc, poch: Iterable[PochFactor] = ()):
        rat, factors = _canonicalize(rat, poch)
        self.rat = rat
        self.poch: Tuple[PochFactor, ...] = factors
        self._hash: Optional[int] = None

    @classmethod
    def one(cls) -> "QHypTerm":
        return cls(RationalFunc.one())

    @classmethod
    def from_rational(cls, rat: RationalFunc) -> "QHypTerm":
        return cls(rat)

    @classmethod
    def pochhammer_quotient(cls, numerator: Iterable[Monomial], denominator: Iterable[Monomial]) -> "QHypTerm":
        """prod (x; q)_inf over numerator bases divided by the same over denominator bases."""
        factors = [(x, 1) for x in numerator] + [(x, -1) for x in denominator]
        return cls(RationalFunc.one(), factors)

    @classmethod
    def theta(cls, x: Monomial, power: int = 1) -> "QHypTerm":
        """theta(x; q)^power = ((x; q)_inf (q/x; q)_inf)^power."""
        return cls(RationalFunc.one(), [(x, power), (Q_BASE / x, power)])

    # ------------------------------------------------------------------

    def __mul__(self, other: "QHypTerm") -> "QHypTerm":
        return QHypTerm(self.rat * other.rat, self.poch + other.poch)

    def inverse(self) -> "QHypTerm":
        return QHypTerm(self.rat.inverse(), [(x, -m) for x, m in self.poch])

    def __truediv__(self, other: "QHypTerm") -> "QHypTerm":
        return self * other.inverse()

    @property
    def is_one(self) -> bool:
        return self.rat.is_one and not self.poch

    def __eq__(self, other) -> bool:
        if not isinstance(other, QHypTerm):
            return NotImplemented
        return self.rat == other.rat and self.poch == other.poch

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rat, tuple((x.exponents, m) for x, m in self.poch)))
        return self._hash

    def to_text(self) -> str:
        """Human-readable form, e.g. ``1 * (b; q)_inf (a z; q)_inf / (c; q)_inf (z; q)_inf``."""
        num = [f"({x.to_text()}; q)_inf" + (f"^{m}" if m > 1 else "") for x, m in self.poch if m > 0]
        den = [f"({x.to_text()}; q)_inf" + (f"^{-m}" if m < -1 else "") for x, m in self.poch if m < 0]
        text = self.rat.to_text() if self.rat.den.is_one else f"[{self.rat.to_text()}]"
        if num:
            text += " * " + " ".join(num)
        if den:
            text += " / " + " ".join(den)
        return text

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"QHypTerm({self.to_text()!r})"


def _canonicalize(rat: RationalFunc, poch: Iterable[PochFactor]) -> Tuple[RationalFunc, Tuple[PochFactor, ...]]:
    merged: Dict[Tuple[int, ...], int] = {}
    for base, mult in poch:
        if not mult:
            continue
        m = base.q_exponent()
        stripped = base.without_q()
        if stripped.is_one:
            # (q^m; q)_inf = (q; q)_inf / (q; q)_{m-1}
            if m <= 0:
                raise FieldElementError(f"(q^{m}; q)_inf vanishes identically")
            rat = rat * finite_poch(Q_BASE, m - 1) ** (-mult)
            key = Q_BASE.exponents
        else:
            # (x q^m; q)_inf = (x; q)_inf / (x; q)_m
            if m:
                rat = rat * finite_poch(stripped, m) ** (-mult)
            key = stripped.exponents
        merged[key] = merged.get(key, 0) + mult
    factors = tuple(
        (Monomial(key), mult) for key, mult in sorted(merged.items()) if mult
    )
    return rat, factors


def shift_ratio(f: QHypTerm, P: ShiftOp) -> RationalFunc:
    """
    P(f) / f, a rational function for every term.

    A factor (x; q)_inf with P(x) = x q^m contributes 1/(x; q)_m, read with
    the negative-index convention when m < 0.
    """
    if P.is_identity:
        return RationalFunc.one()
    ratio = RationalFunc.one() if f.rat.is_zero else P.act(f.rat) / f.rat
    for base, mult in f.poch:
        m = sum(P.k[i] * base.exponents[i] for i in range(4))
        if m:
            ratio = ratio * finite_poch(base, m) ** (-mult)
    return ratio


def act_on_term(L: ParamMatrix, f: QHypTerm) -> QHypTerm:
    """L(f) = f o L^-1, re-canonicalized."""
    if L.is_identity:
        return f
    inv = L.inverse
    rat = act_on_function(L, f.rat)
    return QHypTerm(rat, [(act_on_monomial(inv, base), mult) for base, mult in f.poch])


@dataclass(frozen=True)
class Transformation:
    """An element f L of T; acts on functions by phi -> f * L(phi)."""
    term: QHypTerm
    mat: ParamMatrix
    word: str = ""

    def __eq__(self, other) -> bool:
        if not isinstance(other, Transformation):
            return NotImplemented
        return trans_equal(self, other)

    def __hash__(self) -> int:
        return hash((self.term, self.mat))

    def __mul__(self, other: "Transformation") -> "Transformation":
        return trans_multiply(self, other)

    @classmethod
    def identity(cls) -> "Transformation":
        return cls(QHypTerm.one(), ParamMatrix.identity(), "")

    @classmethod
    def from_shift(cls, P: ShiftOp) -> "Transformation":
        return cls(QHypTerm.one(), P.to_matrix(), P.to_text())

    @property
    def is_identity(self) -> bool:
        return self.term.is_one and self.mat.is_identity


def trans_multiply(t1: Transformation, t2: Transformation) -> Transformation:
    """(f1 L1)(f2 L2) = (f1 L1(f2)) (L1 L2)."""
    term = t1.term * act_on_term(t1.mat, t2.term)
    return Transformation(term, t1.mat @ t2.mat, _join_words(t1.word, t2.word))


def trans_equal(t1: Transformation, t2: Transformation) -> bool:
    return t1.mat == t2.mat and t1.term == t2.term


def trans_inverse(t: Transformation) -> Transformation:
    """(f L)^-1 = L^-1(f^-1) L^-1."""
    inv = t.mat.inverse
    word = f"({t.word})^-1" if t.word else ""
    return Transformation(act_on_term(inv, t.term.inverse()), inv, word)


def trans_power(t: Transformation, n: int) -> Transformation:
    base = t if n >= 0 else trans_inverse(t)
    result = Transformation.identity()
    for _ in range(abs(n)):
        result = trans_multiply(result, base)
    return result


def trans_order(t: Transformation, bound: int = 100) -> int:
    """
    Order of t in T.

    Raises:
        ClosureError: no power up to ``bound`` is the identity
    """
    power = t
    for n in range(1, bound + 1):
        if power.is_identity:
            return n
        power = trans_multiply(power, t)
    raise ClosureError(f"order of {t.word or 'transformation'} exceeds {bound}", bound=bound)


def _join_words(w1: str, w2: str) -> str:
    return " ".join(w for w in (w1, w2) if w)


def _catalog_term(entry: Dict) -> QHypTerm:
    numerator = [monomial_from_text(x) for x in entry.get("numerator", [])]
    denominator = [monomial_from_text(x) for x in entry.get("denominator", [])]
    return QHypTerm.pochhammer_quotient(numerator, denominator)


@lru_cache(maxsize=None)
def t_h() -> Transformation:
    """Heine's transformation: prefactor (b, az; q)_inf / (c, z; q)_inf with L_h."""
    entry = get_config().catalog["heine"]["t_h"]
    return Transformation(_catalog_term(entry), heine_matrix(), "t_h")


@lru_cache(maxsize=None)
def t_ab() -> Transformation:
    """The a <-> b swap with trivial prefactor."""
    entry = get_config().catalog["heine"]["t_ab"]
    return Transformation(_catalog_term(entry), swap_matrix(), "t_ab")


@lru_cache(maxsize=None)
def g_prefactor() -> QHypTerm:
    """
    The theta quotient g used against the excluded matrix.

    g = (c/a, c/b, q^2/c; q)_inf / (c, q/a, q/b; q)_inf
        * theta(ab, z) / theta(c/ab, c/z)
    """
    entry = get_config().catalog["g_prefactor"]
    term = _catalog_term(entry)
    for text in entry.get("theta_numerator", []):
        term = term * QHypTerm.theta(monomial_from_text(text))
    for text in entry.get("theta_denominator", []):
        term = term * QHypTerm.theta(monomial_from_text(text), -1)
    return term


def g_stated_ratios() -> List[Tuple[ShiftOp, RationalFunc]]:
    """The shift ratios Ag/g, Bg/g, Cg/g, Zg/g as stated in the catalog."""
    entry = get_config().catalog["g_prefactor"]
    return [
        (ShiftOp(tuple(ratio["shift"])), parse_rational(ratio["ratio"]))
        for ratio in entry.get("shift_ratios", [])
    ]

