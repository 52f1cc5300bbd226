"""
Multiprecision evaluation of q-Pochhammer symbols, theta functions,
q-hypergeometric terms and 2phi1.

Every public function evaluates inside ``mpmath.workprec(cfg.precision)``.
Infinite products stop once |x q^j| < tail_eps (1 - |q|), which bounds the
relative error of the discarded factors by about tail_eps. The 2phi1 series
stops on a geometric tail certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from mpmath import fabs, mpc, mpf, nstr, workprec

from src.algebra.exactalg import LaurentPoly, RationalFunc
from src.algebra.paramgroup import ParamMatrix, ShiftOp
from src.algebra.qterm import QHypTerm
from src.models.schemas import EvalConfig
from src.utils.errors import NumericDomainError


NAMES = ("a", "b", "c", "z", "q")


def _max_terms(cfg: EvalConfig) -> int:
    return 50 * cfg.precision


def _resolution(cfg: EvalConfig, margin: float) -> mpf:
    """Distance below which a factor counts as zero: ``margin``, or a few ulps."""
    return max(mpf(margin), mpf(2) ** (8 - cfg.precision))


@dataclass(frozen=True)
class EvalPoint:
    """A point (a, b, c, z, q) of C^5 with |q| < 1."""
    a: mpc
    b: mpc
    c: mpc
    z: mpc
    q: mpc

    def __post_init__(self):
        if fabs(self.q) >= 1:
            raise NumericDomainError(f"|q| = {float(fabs(self.q)):.6g} is not below 1", factor="q")

    @classmethod
    def from_values(cls, a, b, c, z, q) -> "EvalPoint":
        return cls(mpc(a), mpc(b), mpc(c), mpc(z), mpc(q))

    @property
    def values(self) -> Tuple[mpc, ...]:
        return (self.a, self.b, self.c, self.z, self.q)

    def monomial(self, exponents: Sequence[int]) -> mpc:
        """The monomial with the given exponent vector, evaluated here."""
        value = mpc(1)
        for x, e in zip(self.values, exponents):
            if e:
                if e < 0 and x == 0:
                    raise NumericDomainError("negative power of a zero parameter", factor=str(exponents))
                value *= x ** e
        return value

    def transformed(self, M: ParamMatrix) -> "EvalPoint":
        """The point whose i-th coordinate is the monomial of row i of M."""
        return EvalPoint(*(self.monomial(row) for row in M.rows))

    def shifted(self, P: ShiftOp) -> "EvalPoint":
        """Each of a, b, c, z multiplied by its power q^k."""
        q = self.q
        a, b, c, z = (x * q ** k for x, k in zip(self.values[:4], P.k))
        return EvalPoint(a, b, c, z, q)

    def to_strings(self, digits: int = 15) -> Dict[str, str]:
        return {name: nstr(x, digits) for name, x in zip(NAMES, self.values)}


def _qpoch(x, q, cfg: EvalConfig) -> Tuple[mpc, mpf]:
    """(x; q)_inf and the smallest modulus among the factors used."""
    if fabs(q) >= 1:
        raise NumericDomainError("(x; q)_inf diverges for |q| >= 1", factor="q")
    threshold = mpf(cfg.tail_eps) * (1 - fabs(q))
    value = mpc(1)
    smallest = mpf("inf")
    term = mpc(x)
    for _ in range(_max_terms(cfg)):
        if fabs(term) < threshold:
            return value, smallest
        factor = 1 - term
        smallest = min(smallest, fabs(factor))
        value *= factor
        term *= q
    raise NumericDomainError("q-Pochhammer product did not converge", factor=str(x))


def qpoch_inf(x, q, cfg: EvalConfig) -> mpc:
    """(x; q)_inf = prod_{j >= 0} (1 - x q^j)."""
    with workprec(cfg.precision):
        return _qpoch(x, q, cfg)[0]


def theta(x, q, cfg: EvalConfig) -> mpc:
    """theta(x; q) = (x; q)_inf (q/x; q)_inf."""
    if x == 0:
        raise NumericDomainError("theta(x; q) needs x != 0", factor="x")
    with workprec(cfg.precision):
        return _qpoch(x, q, cfg)[0] * _qpoch(q / x, q, cfg)[0]


def _check_denominator_parameter(c, q, margin: mpf) -> None:
    """Reject c within ``margin`` of q^-n, n >= 0."""
    scale = fabs(c)
    qabs = fabs(q)
    power = mpc(1)
    n = 0
    # |c q^n| drops below 1/2 after finitely many steps; beyond that 1 - c q^n cannot vanish
    while scale >= mpf("0.5"):
        if fabs(1 - c * power) <= margin:
            raise NumericDomainError(f"c is a pole of 2phi1: c q^{n} = 1", factor=f"(c; q)_{n + 1}")
        power *= q
        scale *= qabs
        n += 1
    if fabs(1 - c * power) <= margin:
        raise NumericDomainError(f"c is a pole of 2phi1: c q^{n} = 1", factor=f"(c; q)_{n + 1}")


def _ratio_bound(p: EvalPoint, k: int) -> mpf:
    """Upper bound on |t_{j+1} / t_j| for every j >= k, or inf when none is available."""
    qk = fabs(p.q) ** k
    den = (1 - fabs(p.q) * qk) * (1 - fabs(p.c) * qk)
    if den <= 0:
        return mpf("inf")
    return fabs(p.z) * (1 + fabs(p.a) * qk) * (1 + fabs(p.b) * qk) / den


def phi21_partial(p: EvalPoint, cfg: EvalConfig, margin: float = 0.0) -> Tuple[mpc, mpf, int]:
    """
    Sum the 2phi1 series at p.

    Returns (value, tail bound, number of terms). The series stops at term k
    once the ratio bound rho for all later terms is below 1 and the geometric
    tail |t_k| rho / (1 - rho) is below tail_eps times the partial sum.

    Raises:
        NumericDomainError: |z| >= 1, c in q^-N, or no certificate within the term budget
    """
    with workprec(cfg.precision):
        if fabs(p.z) >= 1:
            raise NumericDomainError(f"|z| = {float(fabs(p.z)):.6g} is outside the disk of convergence", factor="z")
        _check_denominator_parameter(p.c, p.q, _resolution(cfg, margin))

        total = mpc(1)
        term = mpc(1)
        qk = mpc(1)
        eps = mpf(cfg.tail_eps)
        for k in range(_max_terms(cfg)):
            term = term * (1 - p.a * qk) * (1 - p.b * qk) * p.z / ((1 - p.q * qk) * (1 - p.c * qk))
            qk *= p.q
            total += term
            if term == 0:
                return total, mpf(0), k + 1
            rho = _ratio_bound(p, k + 1)
            if rho < 1:
                tail = fabs(term) * rho / (1 - rho)
                if tail < eps * max(fabs(total), eps):
                    return total, tail, k + 1
    raise NumericDomainError("2phi1 series did not reach its tail certificate", factor="z")


def phi21(p: EvalPoint, cfg: EvalConfig, margin: float = 0.0) -> mpc:
    """2phi1(a, b; c; q, z) by direct summation."""
    return phi21_partial(p, cfg, margin)[0]


def _coeff(c) -> mpf:
    return mpf(int(c.numerator)) / int(c.denominator)


def eval_laurent(f: LaurentPoly, p: EvalPoint) -> mpc:
    return sum((_coeff(c) * p.monomial(e) for e, c in f.terms()), mpc(0))


def eval_rational(f: RationalFunc, p: EvalPoint, cfg: EvalConfig) -> mpc:
    """
    f(p).

    Raises:
        NumericDomainError: the denominator vanishes at p
    """
    with workprec(cfg.precision):
        den = eval_laurent(f.den, p)
        if den == 0:
            raise NumericDomainError("rational function evaluated at a pole", factor=f.den.to_text())
        return eval_laurent(f.num, p) / den


def eval_term(f: QHypTerm, p: EvalPoint, cfg: EvalConfig, margin: float = 0.0) -> mpc:
    """
    f(p) for a q-hypergeometric term.

    A Pochhammer factor with negative multiplicity is a pole at p when one of
    its factors 1 - x q^j is within ``margin`` of zero (within rounding by default).

    Raises:
        NumericDomainError: p is at (or near) a pole; the message names the factor
    """
    with workprec(cfg.precision):
        value = eval_rational(f.rat, p, cfg)
        for base, mult in f.poch:
            x = p.monomial(base.exponents)
            poch, smallest = _qpoch(x, p.q, cfg)
            if mult < 0 and smallest <= _resolution(cfg, margin):
                raise NumericDomainError(
                    f"({base.to_text()}; q)_inf vanishes at the evaluation point",
                    factor=f"({base.to_text()}; q)_inf",
                )
            value *= poch ** mult
        return value


def phi21_tail_bound(p: EvalPoint, K: int, cfg: EvalConfig) -> mpf:
    """
    An upper bound on |sum_{k > K} t_k| for the 2phi1 series at p.

    Sums |t_k| for K < k <= m, where m >= K is the first index whose ratio
    bound rho is below 1, and adds the geometric remainder |t_m| rho / (1 - rho).
    """
    with workprec(cfg.precision):
        if fabs(p.z) >= 1:
            raise NumericDomainError(f"|z| = {float(fabs(p.z)):.6g} is outside the disk of convergence", factor="z")
        term = mpc(1)
        qk = mpc(1)
        bound = mpf(0)
        for k in range(_max_terms(cfg)):
            if k >= K:
                rho = _ratio_bound(p, k)
                if rho < 1:
                    return bound + fabs(term) * rho / (1 - rho)
            term = term * (1 - p.a * qk) * (1 - p.b * qk) * p.z / ((1 - p.q * qk) * (1 - p.c * qk))
            qk *= p.q
            if k >= K:
                bound += fabs(term)
    raise NumericDomainError("no tail bound within the term budget", factor="z")
