"""Utility functions and helpers for qheine."""

from src.utils.config import Config, get_config
from src.utils.logger import get_logger
from src.utils.errors import (
    QHeineError,
    FieldElementError,
    PoleError,
    ParseError,
    PreconditionError,
    SynthesisError,
    SeriesError,
    NumericDomainError,
    ClosureError,
    VerificationError,
    ConfigurationError,
)

__all__ = [
    "Config",
    "get_config",
    "get_logger",
    "QHeineError",
    "FieldElementError",
    "PoleError",
    "ParseError",
    "PreconditionError",
    "SynthesisError",
    "SeriesError",
    "NumericDomainError",
    "ClosureError",
    "VerificationError",
    "ConfigurationError",
]
