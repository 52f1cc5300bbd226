"""
The parameter group G and its shift subgroup N.

A ParamMatrix M acts on the logarithms of (a, b, c, z, q): variable i is sent
to the monomial whose exponent vector is row i of M. Functions transform by
L(f) = f o L^-1. The shift ShiftOp k embeds as the identity with last column
(-k, 1), which acts on functions as var -> var * q^k.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, List, Sequence, Tuple

from sympy import Matrix

from src.algebra.exactalg import NVARS, Q_IDX, LaurentPoly, Monomial, RationalFunc
from src.utils.config import get_config
from src.utils.errors import ParseError, PreconditionError


SHIFT_NAMES: Tuple[str, ...] = ("A", "B", "C", "Z")

_FACTOR_RE = re.compile(r"([ABCZ])(?:\^\{?(-?\d+)\}?)?")
_BRACKET_RE = re.compile(r"^\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]$")


@dataclass(frozen=True)
class ParamMatrix:
    """A 5x5 unimodular integer matrix with bottom row (0, 0, 0, 0, 1)."""
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != NVARS or any(len(r) != NVARS for r in self.rows):
            raise PreconditionError("a parameter matrix is 5x5", operation="ParamMatrix")
        if tuple(self.rows[Q_IDX]) != (0, 0, 0, 0, 1):
            raise PreconditionError("bottom row must be (0, 0, 0, 0, 1)", operation="ParamMatrix")
        if abs(Matrix(self.rows).det()) != 1:
            raise PreconditionError("determinant must be +1 or -1", operation="ParamMatrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "ParamMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def from_flat(cls, entries: Sequence[int]) -> "ParamMatrix":
        """Build from 25 integers in row-major order."""
        if len(entries) != NVARS * NVARS:
            raise ParseError("matrix needs 25 entries", text=str(list(entries)))
        return cls.from_rows(entries[i:i + NVARS] for i in range(0, NVARS * NVARS, NVARS))

    @classmethod
    def identity(cls) -> "ParamMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(NVARS)) for i in range(NVARS)))

    def flat(self) -> List[int]:
        return [x for row in self.rows for x in row]

    def __matmul__(self, other: "ParamMatrix") -> "ParamMatrix":
        cols = list(zip(*other.rows))
        return ParamMatrix(tuple(
            tuple(sum(x * y for x, y in zip(row, col)) for col in cols)
            for row in self.rows
        ))

    __mul__ = __matmul__

    @cached_property
    def inverse(self) -> "ParamMatrix":
        inv = Matrix(self.rows).inv()
        return ParamMatrix.from_rows(inv.tolist())

    @property
    def is_identity(self) -> bool:
        return self == ParamMatrix.identity()

    def apply_vector(self, vec: Sequence[int]) -> Tuple[int, ...]:
        """M v for a column vector v of length 5."""
        return tuple(sum(x * y for x, y in zip(row, vec)) for row in self.rows)

    def shift_part(self) -> "ShiftOp | None":
        """The ShiftOp this matrix embeds, or None when it is not in N."""
        for i in range(4):
            for j in range(4):
                if self.rows[i][j] != int(i == j):
                    return None
        return ShiftOp(tuple(-self.rows[i][4] for i in range(4)))

    def power(self, n: int) -> "ParamMatrix":
        base = self if n >= 0 else self.inverse
        result = ParamMatrix.identity()
        for _ in range(abs(n)):
            result = result @ base
        return result

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(f"{x:>2}" for x in row) for row in self.rows) + "]"


@dataclass(frozen=True, order=True)
class ShiftOp:
    """A q-shift A^k_a B^k_b C^k_c Z^k_z; the group N, written additively in k."""
    k: Tuple[int, int, int, int] = (0, 0, 0, 0)

    def __post_init__(self):
        if len(self.k) != 4:
            raise PreconditionError("a shift has four exponents", operation="ShiftOp")

    @classmethod
    def of(cls, ka: int = 0, kb: int = 0, kc: int = 0, kz: int = 0) -> "ShiftOp":
        return cls((ka, kb, kc, kz))

    @classmethod
    def identity(cls) -> "ShiftOp":
        return cls((0, 0, 0, 0))

    def __mul__(self, other: "ShiftOp") -> "ShiftOp":
        return ShiftOp(tuple(x + y for x, y in zip(self.k, other.k)))

    def __pow__(self, n: int) -> "ShiftOp":
        return ShiftOp(tuple(n * x for x in self.k))

    def inverse(self) -> "ShiftOp":
        return ShiftOp(tuple(-x for x in self.k))

    @property
    def degree(self) -> int:
        return sum(abs(x) for x in self.k)

    @property
    def is_identity(self) -> bool:
        return self.k == (0, 0, 0, 0)

    def to_matrix(self) -> ParamMatrix:
        """Embedding into G: identity with last column (-k, 1)."""
        rows = [[int(i == j) for j in range(NVARS)] for i in range(NVARS)]
        for i, x in enumerate(self.k):
            rows[i][4] = -x
        return ParamMatrix.from_rows(rows)

    def images(self) -> List[Tuple[int, ...]]:
        """Exponent images of the variables under f -> P(f): var -> var q^k."""
        out = []
        for i in range(NVARS):
            exps = [0] * NVARS
            exps[i] = 1
            if i < 4:
                exps[Q_IDX] = self.k[i]
            out.append(tuple(exps))
        return out

    def act(self, f: RationalFunc) -> RationalFunc:
        """P(f): each parameter multiplied by its power of q."""
        if self.is_identity or f.is_zero:
            return f
        return f.map_monomials(self.images())

    def act_poly(self, p: LaurentPoly) -> LaurentPoly:
        """P(p) for a Laurent polynomial; stays a Laurent polynomial."""
        if self.is_identity or p.is_zero:
            return p
        return p.map_monomials(self.images())

    def to_text(self) -> str:
        """Render as ``A^2 C Z^-1``; the identity renders as ``1``."""
        parts = []
        for name, x in zip(SHIFT_NAMES, self.k):
            if x == 1:
                parts.append(name)
            elif x:
                parts.append(f"{name}^{x}")
        return " ".join(parts) if parts else "1"

    def __str__(self) -> str:
        return self.to_text()

    def to_list(self) -> List[int]:
        return list(self.k)


def parse_shift(text: str) -> ShiftOp:
    """
    Parse a shift expression.

    Accepted forms: ``A^i B^j C^k Z^l`` (factors in any order, ``^1`` optional,
    repeated letters add up, e.g. ``ABC``), ``1`` for the identity, or a
    bracketed vector ``[i,j,k,l]``.

    Raises:
        ParseError: the text is not a shift expression
    """
    source = text
    text = text.strip()
    if not text:
        raise ParseError("empty shift expression", text=source)
    bracket = _BRACKET_RE.match(text)
    if bracket:
        return ShiftOp(tuple(int(g) for g in bracket.groups()))
    if text == "1":
        return ShiftOp.identity()

    k = [0, 0, 0, 0]
    compact = re.sub(r"[\s*·]+", "", text)
    pos = 0
    while pos < len(compact):
        match = _FACTOR_RE.match(compact, pos)
        if not match:
            raise ParseError(f"unexpected '{compact[pos:]}' in shift expression", text=source)
        letter, power = match.groups()
        k[SHIFT_NAMES.index(letter)] += int(power) if power is not None else 1
        pos = match.end()
    return ShiftOp(tuple(k))


def act_on_monomial(M: ParamMatrix, x: Monomial) -> Monomial:
    """x evaluated at M applied to the variable vector: exponent vector M^T e."""
    e = x.exponents
    return Monomial(tuple(sum(M.rows[i][j] * e[i] for i in range(NVARS)) for j in range(NVARS)))


def act_on_function(M: ParamMatrix, f: RationalFunc) -> RationalFunc:
    """L(f) = f o L^-1: variable i is replaced by the monomial of row i of M^-1."""
    if f.is_zero or M.is_identity:
        return f
    return f.map_monomials(M.inverse.rows)


def mat_inverse(M: ParamMatrix) -> ParamMatrix:
    return M.inverse


def conjugate_shift(L: ParamMatrix, P: ShiftOp) -> ShiftOp:
    """
    The shift whose embedding equals L P L^-1.

    Since P - I = -(k, 0) e5^T and e5^T L^-1 = e5^T, the conjugate has
    exponent vector L (k, 0).
    """
    image = L.apply_vector(tuple(P.k) + (0,))
    return ShiftOp(tuple(image[:4]))


@lru_cache(maxsize=None)
def heine_matrix() -> ParamMatrix:
    """L_h: (a, b, c, z) -> (c/b, z, az, b)."""
    return ParamMatrix.from_rows(get_config().get_matrix("t_h"))


@lru_cache(maxsize=None)
def swap_matrix() -> ParamMatrix:
    """L_ab: exchange of a and b."""
    return ParamMatrix.from_rows(get_config().get_matrix("t_ab"))


@lru_cache(maxsize=None)
def excluded_matrix() -> ParamMatrix:
    """L_imp: (a, b, c, z) -> (qa/c, qb/c, q^2/c, z), an involution fixing Z."""
    return ParamMatrix.from_rows(get_config().get_matrix("excluded"))


# Named shifts
A = ShiftOp.of(1, 0, 0, 0)
B = ShiftOp.of(0, 1, 0, 0)
C = ShiftOp.of(0, 0, 1, 0)
Z = ShiftOp.of(0, 0, 0, 1)
ONE = ShiftOp.identity()
