"""
LaTeX templates for relations, operators, the candidate table and the
transformation group.
"""

from src.templates.latex import (
    get_candidate_table_template,
    get_group_template,
    get_relation_template,
    render_candidate_table,
    render_group,
    render_operator,
    render_relation,
    term_latex,
)

__all__ = [
    "get_candidate_table_template",
    "get_group_template",
    "get_relation_template",
    "render_candidate_table",
    "render_group",
    "render_operator",
    "render_relation",
    "term_latex",
]
