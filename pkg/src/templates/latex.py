"""
LaTeX output for relations, operators, the candidate table and the group.

Each ``get_*_template`` returns jinja2 source; each ``render_*`` fills it.
Coefficients are typeset with sympy's ``latex``. Templates use
``<< >>``/``<% %>`` delimiters so that TeX braces need no escaping.
"""

from typing import Iterable, List, Sequence

from jinja2 import Environment, StrictUndefined
from sympy import latex

from src.algebra.diffop import DiffOperator
from src.algebra.exactalg import LaurentPoly, Monomial, RationalFunc, parse_rational
from src.algebra.paramgroup import SHIFT_NAMES, ShiftOp
from src.algebra.qterm import QHypTerm, Transformation
from src.contiguous.synthesis import ThreeTermRelation
from src.models.schemas import CandidateRecord


_ENV = Environment(
    block_start_string="<%",
    block_end_string="%>",
    variable_start_string="<<",
    variable_end_string=">>",
    comment_start_string="<#",
    comment_end_string="#>",
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
    undefined=StrictUndefined,
    autoescape=False,
)


def get_relation_template() -> str:
    """A single displayed equation ``sum p_i X_i = 0``."""
    return r"""\begin{equation}
<% for term in terms %>
  <% if not loop.first %>+ <% endif %><< term >>
<% endfor %>
  = 0
\end{equation}
"""


def get_candidate_table_template() -> str:
    """One row per candidate: exponents, verdict, witness denominator."""
    return r"""\begin{tabular}{rrrr|c|l}
$k_a$ & $k_b$ & $k_c$ & $k_z$ & passes & denominator of the witness \\
\hline
<% for row in rows %>
<< row.k | join(" & ") >> & << "yes" if row.passed else "no" >> & $<< row.den >>$ \\
<% endfor %>
\end{tabular}
"""


def get_group_template() -> str:
    """The transformations f L as (word, prefactor, substitution)."""
    return r"""\begin{longtable}{l|l|l}
word & prefactor & $(a, b, c, z) \mapsto$ \\
\hline
<% for e in elements %>
$<< e.word >>$ & $<< e.term >>$ & $(<< e.image | join(", ") >>)$ \\
<% endfor %>
\end{longtable}
"""


def shift_latex(P: ShiftOp) -> str:
    """``A^{2} C Z^{-1}``; the identity renders as an empty string."""
    parts = []
    for name, x in zip(SHIFT_NAMES, P.k):
        if x == 1:
            parts.append(name)
        elif x:
            parts.append(f"{name}^{{{x}}}")
    return " ".join(parts)


def coeff_latex(r) -> str:
    if isinstance(r, LaurentPoly):
        r = RationalFunc.from_laurent(r)
    return latex(r.to_sympy())


def _term_latex(coeff, P: ShiftOp) -> str:
    body = coeff_latex(coeff)
    shift = shift_latex(P)
    if not shift:
        return body
    return f"\\left({body}\\right) {shift}"


def render_relation(rel: ThreeTermRelation) -> str:
    terms = [_term_latex(p, X) for X, p in zip(rel.shifts, rel.coeffs)]
    return _ENV.from_string(get_relation_template()).render(terms=terms)


def render_operator(D: DiffOperator) -> str:
    terms = [_term_latex(r, P) for P, r in D.items()] or ["0"]
    return _ENV.from_string(get_relation_template()).render(terms=terms)


def render_candidate_table(records: Iterable[CandidateRecord]) -> str:
    rows = [
        {"k": [str(x) for x in r.shift], "passed": r.passed, "den": latex(parse_rational(r.denominator).to_sympy())}
        for r in records
    ]
    return _ENV.from_string(get_candidate_table_template()).render(rows=rows)


def term_latex(f: QHypTerm) -> str:
    """The rational part times the Pochhammer quotient, in (x; q)_\\infty notation."""
    num = [_poch_latex(x.to_sympy(), m) for x, m in f.poch if m > 0]
    den = [_poch_latex(x.to_sympy(), -m) for x, m in f.poch if m < 0]
    body = "" if f.rat.is_one else coeff_latex(f.rat)
    if num or den:
        frac = f"\\frac{{{' '.join(num) or '1'}}}{{{' '.join(den) or '1'}}}"
        body = f"{body} {frac}".strip()
    return body or "1"


def _poch_latex(base, mult: int) -> str:
    text = f"({latex(base)}; q)_\\infty"
    return text if mult == 1 else f"{text}^{{{mult}}}"


def _image_latex(t: Transformation) -> List[str]:
    # L(f) = f o L^-1: the variables are sent to the rows of L^-1
    rows: Sequence = t.mat.inverse.rows
    return [latex(Monomial(tuple(row)).to_sympy()) for row in rows[:4]]


def render_group(elements: Iterable[Transformation]) -> str:
    rows = [
        {"word": t.word.replace("t_ab", "t_{ab}") if t.word else "1", "term": term_latex(t.term), "image": _image_latex(t)}
        for t in elements
    ]
    return _ENV.from_string(get_group_template()).render(elements=rows)
