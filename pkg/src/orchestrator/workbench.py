"""
Workbench - the coordinator between the command line and the engines.

The workbench owns one instance of every engine, opens a RunLogger session
per call and returns the engines' reports unchanged. It is the only object
the CLI talks to.

Example usage:
    ```python
    bench = Workbench()

    relation, report = bench.relation(["A", "1", "Z"])
    print(report.text)

    classification = bench.classify()
    print(classification.survivors)   # [[1, 0, 1, 0], [0, 1, 1, 0], [0, 0, 0, 1]]
    ```
"""

import uuid
from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Sequence

from src.algebra.diffop import DiffOperator
from src.engines import (
    ClassificationEngine,
    EvalEngine,
    GeneratorEngine,
    GroupEngine,
    MembershipEngine,
    RelationEngine,
    SymmetryEngine,
)
from src.engines.base_engine import BaseEngine
from src.models.schemas import EvalConfig
from src.utils.config import get_config
from src.utils.logger import RunLogger, get_logger


class Workbench:
    """
    Central coordinator for qheine jobs.

    Every public method runs one engine inside a logged session:
    relation, verify_generators, membership, classify, group,
    verify_symmetry and evaluate.
    """

    def __init__(self):
        self.config = get_config()
        self.logger = get_logger("Workbench")
        self._initialize_engines()
        self.last_timings: Dict[str, float] = {}

    def _initialize_engines(self) -> None:
        self.relation_engine = RelationEngine()
        self.generator_engine = GeneratorEngine()
        self.membership_engine = MembershipEngine()
        self.classification_engine = ClassificationEngine()
        self.group_engine = GroupEngine()
        self.symmetry_engine = SymmetryEngine()
        self.eval_engine = EvalEngine()

        self.logger.debug("All engines initialized")

    def _session(self, engine: BaseEngine, call: Callable[[], Any]) -> Any:
        """Run ``call`` as one logged session of ``engine``."""
        session_id = str(uuid.uuid4())[:8]
        run_logger = RunLogger(session_id)
        run_logger.log_engine_start(engine.name)
        try:
            result = call()
        except Exception as e:
            run_logger.log_engine_complete(engine.name, False, error=str(e))
            run_logger.log_run_complete(False, error=str(e))
            raise
        run_logger.log_engine_complete(engine.name, True)
        run_logger.log_run_complete(True)
        self.last_timings = run_logger.timings()
        return result

    def eval_config(self, **overrides: Any) -> EvalConfig:
        """EvalConfig from YAML, environment and explicit overrides (None ignored)."""
        return self.config.eval_config(**overrides)

    # ------------------------------------------------------------------
    # Jobs
    # ------------------------------------------------------------------

    def relation(self, shifts: Sequence[str], truncation: Optional[int] = None):
        return self._session(self.relation_engine, lambda: self.relation_engine.run(shifts, truncation))

    def verify_generators(self, truncation: Optional[int] = None, derive: bool = False):
        return self._session(
            self.generator_engine,
            lambda: self.generator_engine.run(truncation, derive=derive),
        )

    def membership(self, D: DiffOperator, series_check: Optional[bool] = None):
        return self._session(self.membership_engine, lambda: self.membership_engine.run(D, series_check))

    def classify(self, workers: Optional[int] = None):
        return self._session(self.classification_engine, lambda: self.classification_engine.run(workers))

    def excluded_matrix(self):
        return self._session(self.classification_engine, self.classification_engine.excluded_matrix)

    def group(self):
        return self._session(self.group_engine, self.group_engine.run)

    def verify_symmetry(
        self,
        cfg: EvalConfig,
        words: Optional[Iterable[str]] = None,
        g_ratios: bool = False,
        identities: bool = False,
    ):
        return self._session(
            self.symmetry_engine,
            lambda: self.symmetry_engine.run(cfg, words, g_ratios=g_ratios, identities=identities),
        )

    def evaluate(self, coordinates: Mapping[str, str], cfg: EvalConfig):
        return self._session(self.eval_engine, lambda: self.eval_engine.run(coordinates, cfg))

    def get_engine_stats(self) -> dict:
        """Statistics for all engines."""
        return {
            "relation": self.relation_engine.get_stats(),
            "generators": self.generator_engine.get_stats(),
            "membership": self.membership_engine.get_stats(),
            "classification": self.classification_engine.get_stats(),
            "group": self.group_engine.get_stats(),
            "symmetry": self.symmetry_engine.get_stats(),
            "evaluation": self.eval_engine.get_stats(),
        }
