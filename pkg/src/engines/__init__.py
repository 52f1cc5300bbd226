"""
Engines behind the command-line surface.

Each engine wraps one job around the library:
1. RelationEngine: three-term relation synthesis and verification
2. GeneratorEngine: series check of the ideal generators
3. MembershipEngine: exact ideal membership
4. ClassificationEngine: candidate filter and survivors
5. GroupEngine: the Heine group listing
6. SymmetryEngine: numerical symmetry and identity checks
7. EvalEngine: 2phi1 at a point
"""

from src.engines.relation import RelationEngine
from src.engines.generators import GeneratorEngine
from src.engines.membership import MembershipEngine
from src.engines.classification import ClassificationEngine
from src.engines.group import GroupEngine
from src.engines.symmetry import SymmetryEngine
from src.engines.evaluation import EvalEngine

__all__ = [
    "RelationEngine",
    "GeneratorEngine",
    "MembershipEngine",
    "ClassificationEngine",
    "GroupEngine",
    "SymmetryEngine",
    "EvalEngine",
]
