"""
Base engine class with common functionality.

All engines inherit from BaseEngine to get:
- Structured logging
- Timing measurements
- Error wrapping
- Configuration access
"""

from abc import ABC, abstractmethod
from datetime import datetime
from typing import Any, Optional

from src.utils.config import get_config
from src.utils.errors import QHeineError
from src.utils.logger import EngineLogger


class BaseEngine(ABC):
    """
    Base class for the engines behind the CLI subcommands.

    An engine wraps one job (synthesize a relation, verify the generators,
    classify, ...) around the library functions. Engines keep no state apart
    from their statistics, so one instance can serve many calls.
    """

    def __init__(self, name: Optional[str] = None):
        self.name = name or self.__class__.__name__
        self.logger = EngineLogger(self.name)
        self.config = get_config()

        self.execution_count = 0
        self.total_time = 0.0
        self.error_count = 0

    @abstractmethod
    def execute(self, *args, **kwargs) -> Any:
        """Do the engine's job; subclasses implement this."""

    def run(self, *args, **kwargs) -> Any:
        """
        Wrapper around execute() that adds logging, timing and error handling.

        Raises:
            QHeineError: domain errors pass through; anything else is wrapped
        """
        self.logger.start("execute")
        start_time = datetime.now()

        try:
            result = self.execute(*args, **kwargs)

            elapsed = (datetime.now() - start_time).total_seconds()
            self.total_time += elapsed
            self.execution_count += 1
            self.logger.success("execute", execution_time=elapsed)
            return result

        except QHeineError as e:
            self.error_count += 1
            self.logger.error("execute", e)
            raise

        except Exception as e:
            self.error_count += 1
            self.logger.error("execute", e)
            raise QHeineError(
                f"{self.name} execution failed: {str(e)}",
                recoverable=False,
            ) from e

    def get_stats(self) -> dict:
        """Execution statistics for this engine."""
        avg_time = self.total_time / self.execution_count if self.execution_count > 0 else 0

        return {
            "engine": self.name,
            "executions": self.execution_count,
            "total_time": round(self.total_time, 3),
            "average_time": round(avg_time, 3),
            "errors": self.error_count,
        }
