"""
Exact arithmetic over the field Q(a, b, c, z, q).

Laurent polynomials are stored as a sympy sparse polynomial (graded-lex order
over QQ) with no monomial content, times a monomial offset. Rational functions
are kept in a canonical form so that structural equality is mathematical
equality:

    * the denominator is a genuine polynomial with no monomial content,
      integer coefficients with gcd 1 and a positive leading coefficient;
    * every monomial unit lives in the (Laurent) numerator;
    * numerator and denominator are coprime.
"""

from __future__ import annotations

from dataclasses import dataclass
from tokenize import TokenError
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Expr, Symbol, expand, fraction, integer_nthroot, sympify, together
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed, PolynomialError
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from src.utils.errors import FieldElementError, ParseError, PoleError, PreconditionError


VARIABLES: Tuple[str, ...] = ("a", "b", "c", "z", "q")
NVARS = len(VARIABLES)
A_IDX, B_IDX, C_IDX, Z_IDX, Q_IDX = range(NVARS)

RING, *_GENS = ring(",".join(VARIABLES), QQ, grlex)
SYMBOLS: Dict[str, Symbol] = {name: Symbol(name) for name in VARIABLES}

_ZERO_EXP: Tuple[int, ...] = (0,) * NVARS
_TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)

Exponent = Tuple[int, ...]


def var_index(var: Union[str, int]) -> int:
    """Index of a variable in the fixed order (a, b, c, z, q)."""
    if isinstance(var, int):
        if not 0 <= var < NVARS:
            raise PreconditionError(f"variable index {var} out of range", operation="var_index")
        return var
    try:
        return VARIABLES.index(var)
    except ValueError:
        raise PreconditionError(f"unknown variable '{var}'", operation="var_index") from None


def _add_exp(e1: Exponent, e2: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(e1, e2))


def _sub_exp(e1: Exponent, e2: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(e1, e2))


def _min_exp(exps: Iterable[Exponent]) -> Exponent:
    return tuple(min(col) for col in zip(*exps))


def _format_coeff(coeff) -> str:
    return str(QQ.to_sympy(coeff))


@dataclass(frozen=True)
class Monomial:
    """A Laurent monomial a^i b^j c^k z^l q^m."""
    exponents: Exponent = _ZERO_EXP

    def __post_init__(self):
        if len(self.exponents) != NVARS:
            raise PreconditionError("a monomial has exactly five exponents", operation="Monomial")

    @classmethod
    def variable(cls, var: Union[str, int], power: int = 1) -> "Monomial":
        exps = [0] * NVARS
        exps[var_index(var)] = power
        return cls(tuple(exps))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(_add_exp(self.exponents, other.exponents))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return Monomial(_sub_exp(self.exponents, other.exponents))

    def __pow__(self, n: int) -> "Monomial":
        return Monomial(tuple(n * e for e in self.exponents))

    def inverse(self) -> "Monomial":
        return Monomial(tuple(-e for e in self.exponents))

    @property
    def is_one(self) -> bool:
        return self.exponents == _ZERO_EXP

    def q_exponent(self) -> int:
        return self.exponents[Q_IDX]

    def without_q(self) -> "Monomial":
        exps = list(self.exponents)
        exps[Q_IDX] = 0
        return Monomial(tuple(exps))

    def to_text(self) -> str:
        """Render as `a b^2 q^-1`; the empty monomial renders as `1`."""
        parts = []
        for name, e in zip(VARIABLES, self.exponents):
            if e == 1:
                parts.append(name)
            elif e != 0:
                parts.append(f"{name}^{e}")
        return " ".join(parts) if parts else "1"

    def to_sympy(self) -> Expr:
        expr = sympify(1)
        for name, e in zip(VARIABLES, self.exponents):
            if e:
                expr *= SYMBOLS[name] ** e
        return expr

    def __str__(self) -> str:
        return self.to_text()


class LaurentPoly:
    """
    A Laurent polynomial over QQ in (a, b, c, z, q).

    Immutable. Stored as ``poly * x^offset`` where ``poly`` has no monomial
    content, so the representation is unique.
    """

    __slots__ = ("poly", "offset", "_hash")

    def __init__(self, poly: PolyElement, offset: Exponent = _ZERO_EXP):
        if not poly:
            self.poly = RING.zero
            self.offset = _ZERO_EXP
        else:
            content = _min_exp(poly.itermonoms())
            if content != _ZERO_EXP:
                poly = RING.from_dict({_sub_exp(m, content): c for m, c in poly.iterterms()})
            self.poly = poly
            self.offset = _add_exp(offset, content)
        self._hash: Optional[int] = None

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Dict[Exponent, object]) -> "LaurentPoly":
        """Build from a map exponent-vector -> rational coefficient."""
        clean = {tuple(e): QQ.convert(c) for e, c in terms.items() if c}
        if not clean:
            return cls.zero()
        low = _min_exp(clean.keys())
        shifted = {_sub_exp(e, low): c for e, c in clean.items()}
        return cls(RING.from_dict(shifted), low)

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(RING.zero)

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls(RING.one)

    @classmethod
    def constant(cls, value) -> "LaurentPoly":
        return cls(RING.ground_new(QQ.convert(value)))

    @classmethod
    def variable(cls, var: Union[str, int]) -> "LaurentPoly":
        return cls.monomial(Monomial.variable(var))

    @classmethod
    def monomial(cls, mono: Monomial, coeff=1) -> "LaurentPoly":
        return cls(RING.ground_new(QQ.convert(coeff)), mono.exponents)

    @classmethod
    def from_expr(cls, expr: Union[str, Expr]) -> "LaurentPoly":
        """Parse a sympy expression whose denominator is a monomial."""
        rf = RationalFunc.from_expr(expr)
        if not rf.den.is_one:
            raise ParseError("expression is not a Laurent polynomial", text=str(expr))
        return rf.num

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.poly

    @property
    def is_one(self) -> bool:
        return self.offset == _ZERO_EXP and self.poly == RING.one

    @property
    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(e >= 0 for e in self.offset)

    def __len__(self) -> int:
        return len(self.poly)

    @property
    def support_size(self) -> int:
        return len(self.poly)

    def terms(self) -> List[Tuple[Exponent, object]]:
        """Terms as (exponent vector, coefficient), graded-lex descending."""
        return [(_add_exp(m, self.offset), c) for m, c in self.poly.terms()]

    def as_dict(self) -> Dict[Exponent, object]:
        return dict(self.terms())

    def leading_coeff(self):
        return self.poly.LC if self.poly else QQ.zero

    def is_unit(self) -> bool:
        """A nonzero monomial times a rational constant."""
        return len(self.poly) == 1

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _aligned(self, other: "LaurentPoly") -> Tuple[PolyElement, PolyElement, Exponent]:
        low = _min_exp([self.offset, other.offset])
        p1 = self.poly.mul_monom(_sub_exp(self.offset, low))
        p2 = other.poly.mul_monom(_sub_exp(other.offset, low))
        return p1, p2, low

    def __add__(self, other) -> "LaurentPoly":
        other = _as_laurent(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        p1, p2, low = self._aligned(other)
        return LaurentPoly(p1 + p2, low)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(-self.poly, self.offset)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-_as_laurent(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return _as_laurent(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = _as_laurent(other)
        if self.is_zero or other.is_zero:
            return LaurentPoly.zero()
        return LaurentPoly(self.poly * other.poly, _add_exp(self.offset, other.offset))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_unit():
                raise FieldElementError("negative power of a non-unit Laurent polynomial")
            (exp, coeff), = self.terms()
            return LaurentPoly.from_terms({tuple(n * e for e in exp): QQ.one / coeff ** (-n)})
        return LaurentPoly(self.poly ** n, tuple(n * e for e in self.offset))

    def scale(self, coeff) -> "LaurentPoly":
        return LaurentPoly(self.poly.mul_ground(QQ.convert(coeff)), self.offset)

    def shift_monomial(self, mono: Monomial) -> "LaurentPoly":
        return LaurentPoly(self.poly, _add_exp(self.offset, mono.exponents))

    def map_monomials(self, images: Sequence[Exponent]) -> "LaurentPoly":
        """
        Substitute every variable by a monomial.

        ``images[i]`` is the exponent vector that variable ``i`` is sent to;
        a term with exponent vector e goes to sum_i e_i * images[i].
        """
        out: Dict[Exponent, object] = {}
        for exp, coeff in self.terms():
            new = [0] * NVARS
            for i, e in enumerate(exp):
                if e:
                    img = images[i]
                    for j in range(NVARS):
                        new[j] += e * img[j]
            key = tuple(new)
            out[key] = out.get(key, QQ.zero) + coeff
        return LaurentPoly.from_terms(out)

    # ------------------------------------------------------------------
    # Canonical forms
    # ------------------------------------------------------------------

    def canonical(self) -> "LaurentPoly":
        """Associate with no monomial content, primitive integer coefficients and positive LC."""
        if self.is_zero:
            return self
        _, prim = self.poly.primitive()
        if prim.LC < 0:
            prim = -prim
        return LaurentPoly(prim)

    def associated(self, other: "LaurentPoly") -> bool:
        """True when the two differ by a unit (monomial times rational)."""
        return self.canonical() == _as_laurent(other).canonical()

    # ------------------------------------------------------------------
    # Conversion
    # ------------------------------------------------------------------

    def to_sympy(self) -> Expr:
        expr = sympify(0)
        for exp, coeff in self.terms():
            expr += QQ.to_sympy(coeff) * Monomial(exp).to_sympy()
        return expr

    def to_text(self) -> str:
        """Canonical expression text, e.g. ``-1 * a + 1``."""
        if self.is_zero:
            return "0"
        pieces: List[str] = []
        for n, (exp, coeff) in enumerate(self.terms()):
            mono = Monomial(exp)
            neg = coeff < 0
            body = _format_coeff(-coeff if (neg and n) else coeff)
            if not mono.is_one:
                body = mono.to_text() if body == "1" else f"{body} * {mono.to_text()}"
            if n == 0:
                pieces.append(body)
            else:
                pieces.append(("- " if neg else "+ ") + body)
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            try:
                other = _as_laurent(other)
            except TypeError:
                return NotImplemented
        return self.offset == other.offset and self.poly == other.poly

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self.poly.items()), self.offset))
        return self._hash


def _as_laurent(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int) or QQ.of_type(value):
        return LaurentPoly.constant(value)
    raise TypeError(f"cannot convert {type(value).__name__} to LaurentPoly")


class RationalFunc:
    """
    An element of Q(a, b, c, z, q) in canonical form.

    Use :func:`rf_normalize` (or the arithmetic operators) to construct
    values; the constructor assumes its arguments are already canonical.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        self.num = num
        self.den = den
        self._hash: Optional[int] = None

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "RationalFunc":
        return cls(LaurentPoly.zero(), LaurentPoly.one())

    @classmethod
    def one(cls) -> "RationalFunc":
        return cls(LaurentPoly.one(), LaurentPoly.one())

    @classmethod
    def constant(cls, value) -> "RationalFunc":
        return cls(LaurentPoly.constant(value), LaurentPoly.one())

    @classmethod
    def variable(cls, var: Union[str, int]) -> "RationalFunc":
        return cls(LaurentPoly.variable(var), LaurentPoly.one())

    @classmethod
    def monomial(cls, mono: Monomial, coeff=1) -> "RationalFunc":
        return cls(LaurentPoly.monomial(mono, coeff), LaurentPoly.one())

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RationalFunc":
        return cls(p, LaurentPoly.one())

    @classmethod
    def from_expr(cls, expr: Union[str, Expr]) -> "RationalFunc":
        """
        Convert a sympy expression (or expression text) to canonical form.

        Raises:
            ParseError: text is not a rational function of a, b, c, z, q
        """
        if isinstance(expr, str):
            expr = parse_expression(expr)
        try:
            num_expr, den_expr = fraction(together(sympify(expr)))
            extra = num_expr.free_symbols | den_expr.free_symbols
            unknown = {s.name for s in extra} - set(VARIABLES)
            if unknown:
                raise ParseError(f"unknown symbols {sorted(unknown)}", text=str(expr))
            num = LaurentPoly(RING.from_expr(expand(num_expr))) if num_expr != 0 else LaurentPoly.zero()
            den = LaurentPoly(RING.from_expr(expand(den_expr)))
        except ParseError:
            raise
        except (ValueError, TypeError, SympifyError, CoercionFailed, PolynomialError) as exc:
            raise ParseError(f"not a rational function: {exc}", text=str(expr)) from exc
        return rf_normalize(num, den)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num.is_one and self.den.is_one

    @property
    def is_laurent(self) -> bool:
        """True when the denominator is 1."""
        return self.den.is_one

    def is_unit_monomial(self) -> bool:
        """Monomial times rational constant."""
        return self.den.is_one and self.num.is_unit()

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other) -> "RationalFunc":
        other = as_rational(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            return rf_normalize(self.num + other.num, self.den)
        return rf_normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunc":
        return RationalFunc(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunc":
        return self + (-as_rational(other))

    def __rsub__(self, other) -> "RationalFunc":
        return as_rational(other) - self

    def __mul__(self, other) -> "RationalFunc":
        other = as_rational(other)
        if self.is_zero or other.is_zero:
            return RationalFunc.zero()
        if other.is_unit_monomial():
            return RationalFunc(self.num * other.num, self.den)
        if self.is_unit_monomial():
            return RationalFunc(self.num * other.num, other.den)
        return rf_normalize(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunc":
        if self.is_zero:
            raise FieldElementError("zero has no inverse")
        # den / num: move the numerator's monomial offset across
        mono = Monomial(self.num.offset).inverse()
        return from_coprime(self.den.shift_monomial(mono), LaurentPoly(self.num.poly))

    def __truediv__(self, other) -> "RationalFunc":
        return self * as_rational(other).inverse()

    def __rtruediv__(self, other) -> "RationalFunc":
        return as_rational(other) * self.inverse()

    def __pow__(self, n: int) -> "RationalFunc":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return RationalFunc.one()
        # coprime parts stay coprime; only the sign may need fixing
        return from_coprime(self.num ** n, self.den ** n)

    def map_monomials(self, images: Sequence[Exponent]) -> "RationalFunc":
        """Apply a monomial substitution given by an invertible exponent map."""
        return from_coprime(self.num.map_monomials(images), self.den.map_monomials(images))

    # ------------------------------------------------------------------
    # Conversion
    # ------------------------------------------------------------------

    def to_sympy(self) -> Expr:
        return self.num.to_sympy() / self.den.to_sympy()

    def to_text(self) -> str:
        """Canonical text: ``num`` or ``(num) / (den)``."""
        if self.den.is_one:
            return self.num.to_text()
        return f"({self.num.to_text()}) / ({self.den.to_text()})"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"RationalFunc({self.to_text()!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunc):
            try:
                other = as_rational(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash


def as_rational(value) -> RationalFunc:
    """Coerce ints, rationals and Laurent polynomials to RationalFunc."""
    if isinstance(value, RationalFunc):
        return value
    if isinstance(value, LaurentPoly):
        return RationalFunc.from_laurent(value)
    return RationalFunc.from_laurent(_as_laurent(value))


def from_coprime(num: LaurentPoly, den: LaurentPoly) -> RationalFunc:
    """
    Canonical RationalFunc from a numerator/denominator pair known to be coprime.

    Only the content, monomial offset and sign of the denominator are fixed.
    """
    if den.is_zero:
        raise FieldElementError()
    if num.is_zero:
        return RationalFunc.zero()
    mono = Monomial(den.offset).inverse()
    content, prim = den.poly.primitive()
    if prim.LC < 0:
        prim, content = -prim, -content
    new_num = LaurentPoly(num.poly.quo_ground(content), _add_exp(num.offset, mono.exponents))
    return RationalFunc(new_num, LaurentPoly(prim))


def rf_normalize(num: LaurentPoly, den: LaurentPoly) -> RationalFunc:
    """
    Canonical form of num/den.

    Raises:
        FieldElementError: den is the zero polynomial
    """
    num = _as_laurent(num)
    den = _as_laurent(den)
    if den.is_zero:
        raise FieldElementError()
    if num.is_zero:
        return RationalFunc.zero()
    if den.poly.is_ground:
        return from_coprime(num, den)
    _, n_red, d_red = num.poly.cofactors(den.poly)
    return from_coprime(LaurentPoly(n_red, num.offset), LaurentPoly(d_red, den.offset))


def poly_gcd(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    """
    Greatest common divisor, canonical up to units (monomials times rationals).

    Raises:
        PreconditionError: both inputs are zero
    """
    p = _as_laurent(p)
    r = _as_laurent(r)
    if p.is_zero and r.is_zero:
        raise PreconditionError("gcd(0, 0) is undefined", operation="poly_gcd")
    if p.is_zero:
        return r.canonical()
    if r.is_zero:
        return p.canonical()
    return LaurentPoly(p.poly.gcd(r.poly)).canonical()


def poly_content_gcd(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    """gcd of several Laurent polynomials (zeros skipped)."""
    nonzero = [p for p in polys if not p.is_zero]
    if not nonzero:
        raise PreconditionError("gcd of only zeros is undefined", operation="poly_content_gcd")
    return reduce(poly_gcd, nonzero[1:], nonzero[0].canonical())


def poly_lcm(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    """Least common multiple of two nonzero polynomials, canonical up to units."""
    p = _as_laurent(p)
    r = _as_laurent(r)
    if p.is_zero or r.is_zero:
        raise PreconditionError("lcm with zero is undefined", operation="poly_lcm")
    if p.poly.is_ground:
        return r.canonical()
    if r.poly.is_ground:
        return p.canonical()
    return LaurentPoly(p.poly.lcm(r.poly)).canonical()


def exact_quotient(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """p / d when d divides p in the Laurent ring."""
    if d.is_zero:
        raise FieldElementError()
    quotient = p.poly.exquo(d.poly)
    return LaurentPoly(quotient, _sub_exp(p.offset, d.offset))


def _evaluate_laurent(p: LaurentPoly, idx: int, value: RationalFunc) -> RationalFunc:
    """p with variable ``idx`` replaced by ``value`` (Horner over powers of var)."""
    groups: Dict[int, Dict[Exponent, object]] = {}
    for exp, coeff in p.terms():
        k = exp[idx]
        rest = list(exp)
        rest[idx] = 0
        groups.setdefault(k, {})[tuple(rest)] = coeff
    if not groups:
        return RationalFunc.zero()
    result = RationalFunc.zero()
    for k in sorted(groups):
        part = RationalFunc.from_laurent(LaurentPoly.from_terms(groups[k]))
        result = result + part * (value ** k)
    return result


def substitute(f: RationalFunc, var: Union[str, int], value) -> RationalFunc:
    """
    Exact substitution var -> value.

    Raises:
        PoleError: the denominator vanishes identically after substitution
    """
    idx = var_index(var)
    value = as_rational(value)
    if value.is_unit_monomial():
        (exp, coeff), = value.num.terms()
        if coeff == QQ.one:
            images = [Monomial.variable(i).exponents for i in range(NVARS)]
            images[idx] = exp
            num = f.num.map_monomials(images)
            den = f.den.map_monomials(images)
            if den.is_zero:
                raise PoleError(f"denominator vanishes at {VARIABLES[idx]} = {value}",
                                factor=f.den.to_text())
            return rf_normalize(num, den)
    try:
        num = _evaluate_laurent(f.num, idx, value)
        den = _evaluate_laurent(f.den, idx, value)
        return num / den
    except FieldElementError as exc:
        raise PoleError(f"denominator vanishes at {VARIABLES[idx]} = {value}",
                        factor=f.den.to_text()) from exc


def divides_at_qpower(p: LaurentPoly, var: Union[str, int], j: int) -> bool:
    """True iff (var - q^-j) divides p, decided by substituting var = q^-j."""
    idx = var_index(var)
    if idx == Q_IDX:
        raise PreconditionError("the variable must not be q", operation="divides_at_qpower")
    images = [Monomial.variable(i).exponents for i in range(NVARS)]
    images[idx] = Monomial.variable(Q_IDX, -j).exponents
    return p.map_monomials(images).is_zero


# ----------------------------------------------------------------------
# Binomial-pair factorization
# ----------------------------------------------------------------------

def _rational_sqrt(value) -> Optional[object]:
    """Exact square root of a nonnegative rational, or None."""
    if value < 0:
        return None
    num, exact_n = integer_nthroot(int(value.numerator), 2)
    den, exact_d = integer_nthroot(int(value.denominator), 2)
    if exact_n and exact_d:
        return QQ(num, den)
    return None


def _pair(t1: Tuple[Exponent, object], t2: Tuple[Exponent, object]) -> LaurentPoly:
    return LaurentPoly.from_terms({t1[0]: t1[1], t2[0]: t2[1]})


def _finish(p: LaurentPoly, b1: LaurentPoly, b2: LaurentPoly) -> Optional[Tuple[LaurentPoly, LaurentPoly, LaurentPoly]]:
    """Canonicalize the binomials, recover the unit and verify by expansion."""
    b1 = b1.canonical()
    b2 = b2.canonical()
    if b1.support_size != 2 or b2.support_size != 2:
        return None
    product = b1 * b2
    (exp_p, c_p) = p.terms()[0]
    (exp_b, c_b) = product.terms()[0]
    unit = LaurentPoly.from_terms({_sub_exp(exp_p, exp_b): c_p / c_b})
    if unit * product != p:
        return None
    return unit, b1, b2


def binomial_pair_factor(p: LaurentPoly) -> Optional[Tuple[LaurentPoly, LaurentPoly, LaurentPoly]]:
    """
    Factor p as unit * binomial * binomial, or return None.

    Complete for support size at most four; larger supports return None.

    Raises:
        PreconditionError: p is zero
    """
    if p.is_zero:
        raise PreconditionError("cannot factor the zero polynomial", operation="binomial_pair_factor")
    terms = p.terms()
    size = len(terms)

    if size == 4:
        for k in (1, 2, 3):
            i, j = [n for n in (1, 2, 3) if n != k]
            t0, ti, tj, tk = terms[0], terms[i], terms[j], terms[k]
            if _add_exp(t0[0], tk[0]) != _add_exp(ti[0], tj[0]):
                continue
            if t0[1] * tk[1] != ti[1] * tj[1]:
                continue
            found = _finish(p, _pair(t0, ti), _pair(t0, tj))
            if found:
                return found
        return None

    if size == 3:
        (e0, c0), (e1, c1), (e2, c2) = sorted(terms, key=lambda t: t[0])
        step = _sub_exp(e1, e0)
        if _sub_exp(e2, e1) != step:
            return None
        # c0 + c1 N + c2 N^2 with N = x^step
        disc = c1 * c1 - 4 * c0 * c2
        root = _rational_sqrt(disc)
        if root is None:
            return None
        r1 = (-c1 + root) / (2 * c2)
        r2 = (-c1 - root) / (2 * c2)
        b1 = LaurentPoly.from_terms({step: QQ.one, _ZERO_EXP: -r1})
        b2 = LaurentPoly.from_terms({step: QQ.one, _ZERO_EXP: -r2})
        return _finish(p, b1, b2)

    if size == 2:
        (e0, c0), (e1, c1) = terms
        diff = _sub_exp(e1, e0)
        if any(d % 2 for d in diff):
            return None
        root = _rational_sqrt(-c1 / c0)
        if root is None:
            return None
        half = tuple(d // 2 for d in diff)
        b1 = LaurentPoly.from_terms({_ZERO_EXP: QQ.one, half: -root})
        b2 = LaurentPoly.from_terms({_ZERO_EXP: QQ.one, half: root})
        return _finish(p, b1, b2)

    return None


# ----------------------------------------------------------------------
# Text parsing
# ----------------------------------------------------------------------

def parse_expression(text: str) -> Expr:
    """
    Parse expression text in a, b, c, z, q.

    Accepts sympy syntax as well as the canonical text form, where ``^`` is a
    power and juxtaposition is multiplication (``-1 * a b^2 + 1``).
    """
    if not text or not text.strip():
        raise ParseError("empty expression", text=text)
    try:
        expr = parse_expr(text, local_dict=dict(SYMBOLS), transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, ValueError, TokenError) as exc:
        raise ParseError(f"cannot parse expression: {exc}", text=text) from exc
    unknown = {s.name for s in getattr(expr, "free_symbols", set())} - set(VARIABLES)
    if unknown:
        raise ParseError(f"unknown symbols {sorted(unknown)}", text=text)
    return expr


def parse_rational(text: str) -> RationalFunc:
    """Parse expression text to a canonical RationalFunc."""
    return RationalFunc.from_expr(parse_expression(text))


def parse_laurent(text: str) -> LaurentPoly:
    """Parse expression text to a Laurent polynomial."""
    return LaurentPoly.from_expr(parse_expression(text))
