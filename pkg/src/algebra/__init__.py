"""
Exact algebra for basic hypergeometric series.

Layers, bottom-up:
1. exactalg: Laurent polynomials and rational functions in (a, b, c, z, q)
2. paramgroup: the parameter group G and its shift subgroup N
3. qterm: q-hypergeometric terms and the transformation group T
4. series: the exact truncated 2phi1 series
5. diffop: the operator ring D = R # N
"""

from src.algebra.exactalg import LaurentPoly, Monomial, RationalFunc, parse_rational
from src.algebra.paramgroup import ParamMatrix, ShiftOp, parse_shift
from src.algebra.qterm import QHypTerm, Transformation
from src.algebra.series import FormalSeries, phi21_series
from src.algebra.diffop import DiffOperator, conjugate_op, normalize_operator

__all__ = [
    "LaurentPoly",
    "Monomial",
    "RationalFunc",
    "parse_rational",
    "ParamMatrix",
    "ShiftOp",
    "parse_shift",
    "QHypTerm",
    "Transformation",
    "FormalSeries",
    "phi21_series",
    "DiffOperator",
    "conjugate_op",
    "normalize_operator",
]
