"""
Tests for the JSON codec and the LaTeX templates.
"""

import json

import pytest

from src.algebra.diffop import DiffOperator
from src.algebra.exactalg import parse_rational
from src.algebra.paramgroup import A, B, ONE, Z, ShiftOp
from src.algebra.qterm import g_prefactor, t_h
from src.classify.filter import filter_candidate
from src.classify.group import heine_group
from src.contiguous import generator, three_term
from src.models.codec import (
    load_model,
    load_operator,
    parse_operator,
    parse_relation,
    parse_term,
    parse_transformation,
    render_operator,
    render_relation,
    render_term,
    render_transformation,
)
from src.models.schemas import OperatorModel, RelationModel, TransformationModel
from src.templates import latex
from src.utils.errors import ParseError


@pytest.mark.unit
class TestCodec:
    """Wire models for relations, operators and transformations."""

    def test_relation(self):
        rel = three_term(A, ONE, Z)
        model = render_relation(rel)
        assert model.shifts == [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]]
        assert model.coeffs[0] == "-1 * a + 1"
        again = load_model(model.model_dump_json(), RelationModel)
        assert parse_relation(again) == rel

    def test_operator(self):
        D = generator("Q_c")
        text = render_operator(D).model_dump_json()
        assert load_operator(text) == D

    def test_repeated_shift_adds_up(self):
        doc = {"terms": [
            {"shift": [1, 0, 0, 0], "coeff": "a"},
            {"shift": [1, 0, 0, 0], "coeff": "1 - a"},
            {"shift": [0, 0, 0, 0], "coeff": "-1"},
        ]}
        D = parse_operator(OperatorModel.model_validate(doc))
        assert D == DiffOperator({A: 1, ONE: -1})

    def test_transformations(self):
        for t in heine_group():
            model = render_transformation(t)
            restored = parse_transformation(load_model(model.model_dump_json(), TransformationModel))
            assert restored == t
            assert restored.word == t.word

    def test_term(self):
        assert parse_term(render_term(g_prefactor())) == g_prefactor()

    def test_invalid_json(self):
        with pytest.raises(ParseError):
            load_operator("{ not json")

    @pytest.mark.parametrize("doc,cls", [
        ({"shifts": [[1, 0, 0, 0], [0, 0, 0, 0]], "coeffs": ["1", "a"]}, RelationModel),
        ({"shifts": [[1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]], "coeffs": ["1", "a", "b"]}, RelationModel),
        ({"terms": [{"shift": [1, 0], "coeff": "a"}]}, OperatorModel),
        ({"term": {"rat": "1", "poch": []}, "matrix": [1, 0, 0]}, TransformationModel),
    ])
    def test_rejected_documents(self, doc, cls):
        with pytest.raises(ParseError):
            load_model(json.dumps(doc), cls)

    def test_bad_coefficient_text(self):
        with pytest.raises(ParseError):
            load_operator(json.dumps({"terms": [{"shift": [0, 0, 0, 0], "coeff": "sin(a)"}]}))


@pytest.mark.unit
class TestLatex:
    """jinja2 templates for relations, tables and the group."""

    def test_shift_latex(self):
        assert latex.shift_latex(ShiftOp.of(2, 0, 1, -1)) == "A^{2} C Z^{-1}"
        assert latex.shift_latex(ONE) == ""

    def test_relation(self):
        text = latex.render_relation(three_term(A, B, ONE))
        assert text.startswith("\\begin{equation}")
        assert "= 0" in text
        assert "\\right) A" in text and "\\right) B" in text
        assert text.rstrip().endswith("\\end{equation}")

    def test_zero_operator(self):
        assert "0\n" in latex.render_operator(DiffOperator.zero())

    def test_candidate_table(self):
        records = [filter_candidate(Z).to_record(), filter_candidate(A).to_record()]
        text = latex.render_candidate_table(records)
        assert "0 & 0 & 0 & 1 & yes" in text
        assert "1 & 0 & 0 & 0 & no" in text

    def test_group_table(self):
        text = latex.render_group(heine_group())
        assert text.count("\\\\") == 13
        assert "t_{ab}" in text
        assert "\\infty" in text

    def test_prefactor(self):
        assert latex.term_latex(t_h().term).startswith("\\frac{")
        assert latex.coeff_latex(parse_rational("1 - a")) == "1 - a"
