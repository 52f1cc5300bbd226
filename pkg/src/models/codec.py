"""
JSON codec for relations, operators and transformations.

``render_*`` builds the pydantic wire model, ``parse_*`` rebuilds the exact
object. Coefficients travel as canonical expression text, so
parse(render(x)) == x.
"""

import json
from typing import Union

from pydantic import ValidationError

from src.algebra.diffop import DiffOperator
from src.algebra.exactalg import parse_laurent, parse_rational
from src.algebra.paramgroup import ParamMatrix, ShiftOp
from src.algebra.qterm import QHypTerm, Transformation, monomial_from_text
from src.contiguous.synthesis import ThreeTermRelation
from src.models.schemas import (
    OperatorModel,
    OperatorTermModel,
    PochhammerFactorModel,
    QHypTermModel,
    RelationModel,
    TransformationModel,
)
from src.utils.errors import ParseError


def render_relation(rel: ThreeTermRelation) -> RelationModel:
    return RelationModel(
        shifts=[X.to_list() for X in rel.shifts],
        coeffs=[p.to_text() for p in rel.coeffs],
        verified_to_order=rel.verified_to_order,
    )


def parse_relation(model: RelationModel) -> ThreeTermRelation:
    shifts = tuple(ShiftOp(tuple(k)) for k in model.shifts)
    coeffs = tuple(parse_laurent(text) for text in model.coeffs)
    return ThreeTermRelation(shifts, coeffs, model.verified_to_order)


def render_operator(D: DiffOperator) -> OperatorModel:
    return OperatorModel(terms=[
        OperatorTermModel(shift=P.to_list(), coeff=r.to_text()) for P, r in D.items()
    ])


def parse_operator(model: OperatorModel) -> DiffOperator:
    """Terms on a repeated shift are added up."""
    return DiffOperator.from_pairs(
        (ShiftOp(tuple(term.shift)), parse_rational(term.coeff)) for term in model.terms
    )


def render_term(f: QHypTerm) -> QHypTermModel:
    return QHypTermModel(
        rat=f.rat.to_text(),
        poch=[PochhammerFactorModel(base=x.to_text(), mult=m) for x, m in f.poch],
    )


def parse_term(model: QHypTermModel) -> QHypTerm:
    return QHypTerm(
        parse_rational(model.rat),
        [(monomial_from_text(factor.base), factor.mult) for factor in model.poch],
    )


def render_transformation(t: Transformation) -> TransformationModel:
    return TransformationModel(term=render_term(t.term), matrix=t.mat.flat(), word=t.word)


def parse_transformation(model: TransformationModel) -> Transformation:
    return Transformation(parse_term(model.term), ParamMatrix.from_flat(model.matrix), model.word or "")


ModelType = Union[type[RelationModel], type[OperatorModel], type[TransformationModel]]


def load_model(text: str, model_cls: ModelType):
    """
    Validate a JSON document against a wire model.

    Raises:
        ParseError: invalid JSON or a document that does not match the model
    """
    try:
        return model_cls.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg} at line {e.lineno}", text=text[:200]) from e
    except ValidationError as e:
        raise ParseError(f"document does not match {model_cls.__name__}: {e.error_count()} errors",
                         text=text[:200]) from e


def load_operator(text: str) -> DiffOperator:
    """An operator from JSON text in the OperatorModel format."""
    return parse_operator(load_model(text, OperatorModel))
