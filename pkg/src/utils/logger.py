"""
Structured logging for qheine.

All log output goes to stderr (and the configured log file) so that JSON
written to stdout by the CLI stays machine-readable.
"""

import logging
import sys
from pathlib import Path
from typing import Dict, Optional, TextIO
from datetime import datetime
import structlog
from colorama import Fore, Style, init as colorama_init

from src.utils.config import get_config


colorama_init(autoreset=True)

# file sink of structlog when console output is off
_log_stream: Optional[TextIO] = None


def setup_logging(
    log_level: Optional[str] = None,
    log_file: Optional[Path] = None,
    enable_console: Optional[bool] = None,
    json_console: Optional[bool] = None,
) -> None:
    """
    Configure structured logging for the application.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Path to log file
        enable_console: Whether to log to stderr at all
        json_console: Render console records as JSON instead of coloured text
    """
    config = get_config()

    log_level = (log_level or config.logging.get("level", "WARNING")).upper()
    log_file = Path(log_file or config.logging.get("file") or config.paths.log_file)
    if enable_console is None:
        enable_console = config.logging.get("console_output", True)
    if json_console is None:
        json_console = config.logging.get("json_console", False)

    global _log_stream
    log_file.parent.mkdir(parents=True, exist_ok=True)
    if _log_stream is not None:
        _log_stream.close()
        _log_stream = None
    if not enable_console:
        _log_stream = open(log_file, "a", encoding="utf-8")

    processors = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    if enable_console and not json_console:
        processors.append(
            structlog.dev.ConsoleRenderer(
                colors=sys.stderr.isatty(),
                exception_formatter=structlog.dev.plain_traceback,
            )
        )
    else:
        processors.append(structlog.processors.JSONRenderer())

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(getattr(logging, log_level)),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(
            file=_log_stream or sys.stderr
        ),
        cache_logger_on_first_use=False,
    )

    logging.basicConfig(
        level=getattr(logging, log_level),
        format="%(message)s",
        handlers=[
            logging.FileHandler(log_file),
            logging.StreamHandler(sys.stderr) if enable_console else logging.NullHandler(),
        ],
        force=True,
    )


class EngineLogger:
    """
    Structured logger for engine and library operations.

    Automatically adds the component name and timing information.
    """

    def __init__(self, component: str):
        """
        Initialize engine logger.

        Args:
            component: Name of the engine or module (e.g., "RelationEngine")
        """
        self.component = component
        self.logger = structlog.get_logger(component)
        self.start_time: Optional[datetime] = None

    def start(self, operation: str, **kwargs) -> None:
        """Log the start of an operation."""
        self.start_time = datetime.now()
        self.logger.info(
            f"Starting {operation}",
            component=self.component,
            operation=operation,
            **kwargs
        )

    def success(self, operation: str, **kwargs) -> None:
        """Log successful completion."""
        self.logger.info(
            f"Completed {operation}",
            component=self.component,
            operation=operation,
            elapsed_seconds=self._get_elapsed(),
            status="success",
            **kwargs
        )

    def error(self, operation: str, error: Exception, **kwargs) -> None:
        """Log an error."""
        self.logger.error(
            f"Failed {operation}",
            component=self.component,
            operation=operation,
            elapsed_seconds=self._get_elapsed(),
            error_type=type(error).__name__,
            error_message=str(error),
            status="error",
            **kwargs
        )

    def warning(self, message: str, **kwargs) -> None:
        self.logger.warning(message, component=self.component, **kwargs)

    def info(self, message: str, **kwargs) -> None:
        self.logger.info(message, component=self.component, **kwargs)

    def debug(self, message: str, **kwargs) -> None:
        self.logger.debug(message, component=self.component, **kwargs)

    def _get_elapsed(self) -> Optional[float]:
        """Calculate elapsed time since operation start."""
        if self.start_time:
            elapsed = (datetime.now() - self.start_time).total_seconds()
            return round(elapsed, 3)
        return None


class RunLogger:
    """
    Logger for one CLI session.

    Tracks timing for each engine and overall run performance.
    """

    def __init__(self, session_id: str):
        self.session_id = session_id
        self.logger = structlog.get_logger("Run")
        self.start_time = datetime.now()
        self.engine_times: Dict[str, Dict] = {}

    def log_engine_start(self, engine_name: str) -> None:
        """Log when an engine starts."""
        self.engine_times[engine_name] = {"start": datetime.now()}
        self.logger.info(
            f"Engine starting: {engine_name}",
            session_id=self.session_id,
            engine=engine_name,
            run_elapsed=self._get_run_elapsed()
        )

    def log_engine_complete(self, engine_name: str, success: bool, **kwargs) -> None:
        """Log when an engine completes."""
        if engine_name in self.engine_times:
            end_time = datetime.now()
            elapsed = (end_time - self.engine_times[engine_name]["start"]).total_seconds()
            self.engine_times[engine_name]["end"] = end_time
            self.engine_times[engine_name]["elapsed"] = elapsed

            self.logger.info(
                f"Engine completed: {engine_name}",
                session_id=self.session_id,
                engine=engine_name,
                engine_elapsed=elapsed,
                run_elapsed=self._get_run_elapsed(),
                success=success,
                **kwargs
            )

    def log_run_complete(self, success: bool, **kwargs) -> None:
        """Log when the whole run completes."""
        self.logger.info(
            "Run completed",
            session_id=self.session_id,
            total_elapsed=self._get_run_elapsed(),
            success=success,
            engine_times={
                name: times.get("elapsed", 0)
                for name, times in self.engine_times.items()
            },
            **kwargs
        )

    def timings(self) -> Dict[str, float]:
        """Elapsed seconds per completed engine."""
        return {
            name: round(times["elapsed"], 3)
            for name, times in self.engine_times.items()
            if "elapsed" in times
        }

    def _get_run_elapsed(self) -> float:
        elapsed = (datetime.now() - self.start_time).total_seconds()
        return round(elapsed, 3)


def get_logger(name: str) -> EngineLogger:
    """
    Get a logger instance for an engine or module.

    Args:
        name: Name of the engine or module

    Returns:
        EngineLogger instance
    """
    return EngineLogger(name)


# Console formatting utilities
def format_success(message: str) -> str:
    """Format a success message with color."""
    return f"{Fore.GREEN}✓{Style.RESET_ALL} {message}"


def format_error(message: str) -> str:
    """Format an error message with color."""
    return f"{Fore.RED}✗{Style.RESET_ALL} {message}"


def format_warning(message: str) -> str:
    """Format a warning message with color."""
    return f"{Fore.YELLOW}⚠{Style.RESET_ALL} {message}"


def format_info(message: str) -> str:
    """Format an info message with color."""
    return f"{Fore.CYAN}ℹ{Style.RESET_ALL} {message}"


# Initialize logging when module is imported
setup_logging()
