"""Contiguous relations: the annihilator ideal, three-term synthesis and membership."""

from src.contiguous.ideal import abc_relation, generator, generators, verify_annihilates
from src.contiguous.synthesis import ThreeTermRelation, normal_form_to_Z1, three_term
from src.contiguous.membership import ideal_membership
from src.contiguous.divisibility import divisibility_pattern

__all__ = [
    "abc_relation",
    "generator",
    "generators",
    "verify_annihilates",
    "ThreeTermRelation",
    "normal_form_to_Z1",
    "three_term",
    "ideal_membership",
    "divisibility_pattern",
]
