"""Evaluation Engine - 2phi1 at a single user-given point."""

from typing import Mapping

from mpmath import mpc, mpf, mpmathify, nstr, workprec

from src.algebra.exactalg import parse_expression
from src.engines.base_engine import BaseEngine
from src.models.schemas import EvalConfig, EvaluationReport
from src.numerics.qfunctions import EvalPoint, phi21
from src.utils.errors import ParseError


def parse_number(text: str) -> mpc:
    """
    A complex number from text such as ``0.3``, ``1/3``, ``0.2+0.1*I`` or ``0.5j``.

    Raises:
        ParseError: the text is not a numeric constant
    """
    try:
        return mpc(mpmathify(text.replace(" ", "")))
    except (ValueError, TypeError):
        pass
    expr = parse_expression(text)
    if expr.free_symbols:
        raise ParseError("a point coordinate must be a number", text=text)
    re, im = expr.as_real_imag()
    return mpc(mpf(str(re.evalf(60))), mpf(str(im.evalf(60))))


class EvalEngine(BaseEngine):
    """Evaluation Engine: phi21 with the configured precision."""

    def __init__(self):
        super().__init__("EvalEngine")

    def execute(self, coordinates: Mapping[str, str], cfg: EvalConfig) -> EvaluationReport:
        """
        Args:
            coordinates: Text values for a, b, c, z and q

        Raises:
            ParseError: a coordinate is missing or not a number
            NumericDomainError: the point is outside the convergence domain
        """
        missing = [name for name in ("a", "b", "c", "z", "q") if name not in coordinates]
        if missing:
            raise ParseError(f"missing coordinates {missing}")
        with workprec(cfg.precision):
            values = {name: parse_number(str(coordinates[name])) for name in ("a", "b", "c", "z", "q")}
            p = EvalPoint.from_values(**values)
            value = phi21(p, cfg)
            digits = max(15, int(cfg.precision * 0.30103) - 2)
            text = nstr(value, digits)
        return EvaluationReport(point=p.to_strings(), value=text, precision=cfg.precision)
