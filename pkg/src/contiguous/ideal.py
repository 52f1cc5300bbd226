"""
The annihilator ideal I of 2phi1: its generators and the series oracle.

An operator D lies in I when D applied to 2phi1 vanishes. The oracle checks
this exactly on the truncated series: every coefficient of z^0..z^K of the
result must be the zero rational function.
"""

from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from src.algebra.diffop import DiffOperator, apply_to_series, left_clear, normalize_operator, split_by_z
from src.algebra.exactalg import Q_IDX, Monomial, RationalFunc
from src.algebra.series import phi21_series, shifted_coefficient_ratio
from src.utils.config import get_config
from src.utils.errors import PreconditionError
from src.utils.logger import get_logger


logger = get_logger("contiguous.ideal")

GENERATOR_NAMES: Tuple[str, ...] = ("P_a", "P_b", "P_c", "Q_a", "Q_b", "Q_c", "R_z")


@lru_cache(maxsize=None)
def generator(name: str) -> DiffOperator:
    """One named generator exactly as listed in the catalog."""
    return DiffOperator.from_catalog(get_config().get_generator(name))


def generators() -> List[DiffOperator]:
    """The seven generators in the order P_a, P_b, P_c, Q_a, Q_b, Q_c, R_z."""
    return [generator(name) for name in GENERATOR_NAMES]


@lru_cache(maxsize=None)
def abc_relation() -> DiffOperator:
    """ABC + (1 - c) / (z (1 - a) (1 - b)) (Z - 1)."""
    return DiffOperator.from_catalog(get_config().get_generator("abc_relation"))


def first_nonvanishing_order(D: DiffOperator, K: int) -> Optional[int]:
    """
    Smallest n <= K such that the z^n coefficient of D 2phi1 is nonzero, or None.

    D is first replaced by its polynomial normal form. For a term
    rho z^j P of that form, the contribution to the z^n coefficient divided by
    c_n is rho q^((n-j) k_z) P(c_(n-j)) / c_n, a short product of binomials,
    so no coefficient of the series itself is ever expanded.
    """
    if D.is_zero:
        return None
    cleared = normalize_operator(D)
    parts = [(P, sorted(split_by_z(r.num).items())) for P, r in cleared.items()]
    for n in range(K + 1):
        total = RationalFunc.zero()
        for P, zparts in parts:
            for j, rho in zparts:
                m = n - j
                if m < 0:
                    break
                term = RationalFunc.from_laurent(rho) * shifted_coefficient_ratio(P.k, m, n)
                if P.k[3] and m:
                    term = term * RationalFunc.monomial(Monomial.variable(Q_IDX, m * P.k[3]))
                total = total + term
        if not total.is_zero:
            return n
    return None


def verify_annihilates(D: DiffOperator, K: Optional[int] = None, method: str = "ratio") -> bool:
    """
    True iff the coefficients of z^0..z^K of D 2phi1 all vanish.

    Args:
        D: Operator to test
        K: Truncation order (defaults to the configured truncation)
        method: "ratio" divides each coefficient by c_n before summing;
            "series" applies D to the expanded truncated series

    Raises:
        PreconditionError: K < 1 or an unknown method
        SeriesError: "series" method on an operator whose coefficients have no
            expansion in z and left-clearing is disabled
    """
    config = get_config()
    K = config.series.truncation if K is None else K
    if K < 1:
        raise PreconditionError("truncation must be at least 1", operation="verify_annihilates")

    if method == "ratio":
        order = first_nonvanishing_order(D, K)
        if order is not None:
            logger.debug("operator does not annihilate", order=order, length=D.length)
        return order is None
    if method == "series":
        op = left_clear(D) if config.series.left_clear else D
        return apply_to_series(op, phi21_series(K), K).is_zero
    raise PreconditionError(f"unknown method '{method}'", operation="verify_annihilates")
