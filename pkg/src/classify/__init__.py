"""Classification of the symmetries of 2phi1 and the Heine group."""

from src.classify.candidates import enumerate_candidates
from src.classify.filter import filter_candidate, run_classification
from src.classify.group import heine_group
from src.classify.invariance import eqnow_invariance, reduce_to_z

__all__ = [
    "enumerate_candidates",
    "filter_candidate",
    "run_classification",
    "heine_group",
    "eqnow_invariance",
    "reduce_to_z",
]
