"""
qheine

Exact computer algebra for the q-difference operators that annihilate the
basic hypergeometric series 2phi1: contiguous relations, membership in the
annihilator, classification of the Heine symmetries and high-precision
numerical checks.
"""

__version__ = "0.1.0"
__author__ = "qheine developers"

from src.orchestrator.workbench import Workbench
from src.models.schemas import (
    ClassificationReport,
    EvalConfig,
    GroupReport,
    RelationReport,
)

__all__ = [
    "Workbench",
    "ClassificationReport",
    "EvalConfig",
    "GroupReport",
    "RelationReport",
]
