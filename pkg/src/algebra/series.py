"""
Exact power series in z with coefficients in Q(a, b, c, q).

The basic hypergeometric series has coefficients
c_n = (a; q)_n (b; q)_n / ((q; q)_n (c; q)_n). Numerator and denominator are
products of distinct irreducible binomials, so they are assembled without a
gcd computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from src.algebra.exactalg import (
    A_IDX,
    B_IDX,
    C_IDX,
    Q_IDX,
    LaurentPoly,
    Monomial,
    RationalFunc,
    from_coprime,
)
from src.utils.errors import PreconditionError


def _binomial(var: int, q_power: int) -> LaurentPoly:
    """1 - x q^j."""
    mono = Monomial.variable(var) * Monomial.variable(Q_IDX, q_power)
    return LaurentPoly.one() - LaurentPoly.monomial(mono)


def _q_binomial(q_power: int) -> LaurentPoly:
    """1 - q^j."""
    return LaurentPoly.one() - LaurentPoly.monomial(Monomial.variable(Q_IDX, q_power))


def poch_ratio(var: int, i: int, j: int) -> RationalFunc:
    """
    (x; q)_i / (x; q)_j for the variable x with index ``var`` (any integers i, j).

    Uses (x; q)_i / (x; q)_j = prod_{l=j..i-1} (1 - x q^l) for i >= j.
    """
    if i == j:
        return RationalFunc.one()
    lo, hi = (j, i) if i > j else (i, j)
    prod = LaurentPoly.one()
    for l in range(lo, hi):
        prod = prod * (_binomial(var, l) if var != Q_IDX else _q_binomial(l + 1))
    if i > j:
        return RationalFunc.from_laurent(prod)
    return from_coprime(LaurentPoly.one(), prod)


@dataclass(frozen=True)
class FormalSeries:
    """Truncated series sum_{n=0..K} coeffs[n] z^n."""
    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> RationalFunc:
        return self.coeffs[n]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)


def phi21_coefficient(n: int) -> RationalFunc:
    """c_n = (a, b; q)_n / (q, c; q)_n."""
    if n < 0:
        raise PreconditionError("series index must be nonnegative", operation="phi21_coefficient")
    num = LaurentPoly.one()
    den = LaurentPoly.one()
    for k in range(n):
        num = num * _binomial(A_IDX, k) * _binomial(B_IDX, k)
        den = den * _q_binomial(k + 1) * _binomial(C_IDX, k)
    # distinct irreducible factors on each side: already coprime
    return from_coprime(num, den)


def phi21_series(K: int) -> FormalSeries:
    """The exact basic hypergeometric series truncated at z^K."""
    if K < 0:
        raise PreconditionError("truncation must be nonnegative", operation="phi21_series")
    return FormalSeries(tuple(phi21_coefficient(n) for n in range(K + 1)))


def shifted_coefficient_ratio(k: Sequence[int], m: int, n: int) -> RationalFunc:
    """
    P(c_m) / c_n for the shift P = A^ka B^kb C^kc (the z-part is handled by callers).

    Each factor is a ratio of finite Pochhammer symbols, so the result is a
    product of a handful of binomials even when m and n are large.
    """
    ka, kb, kc = k[0], k[1], k[2]
    # (x q^kx; q)_m / (x; q)_n = (x; q)_{kx+m} / ((x; q)_kx (x; q)_n)
    ratio = poch_ratio(A_IDX, ka + m, n) * poch_ratio(A_IDX, 0, ka)
    ratio = ratio * poch_ratio(B_IDX, kb + m, n) * poch_ratio(B_IDX, 0, kb)
    # 1/(q; q)_m over 1/(q; q)_n
    ratio = ratio * poch_ratio(Q_IDX, n, m)
    # 1/(c q^kc; q)_m over 1/(c; q)_n
    ratio = ratio * poch_ratio(C_IDX, n, kc + m) * poch_ratio(C_IDX, kc, 0)
    return ratio
