"""
Custom exception classes for qheine.

Provides structured error handling with recovery strategies.
"""

from typing import Optional
from src.models.schemas import ErrorType


class QHeineError(Exception):
    """Base exception for all qheine errors."""

    def __init__(
        self,
        message: str,
        error_type: Optional[ErrorType] = None,
        recoverable: bool = True,
        suggested_action: Optional[str] = None
    ):
        """
        Initialize qheine error.

        Args:
            message: Human-readable error message
            error_type: Category of error (for recovery strategies)
            recoverable: Whether this error can be recovered from
            suggested_action: Suggested action to resolve the error
        """
        super().__init__(message)
        self.message = message
        self.error_type = error_type
        self.recoverable = recoverable
        self.suggested_action = suggested_action

    def to_dict(self) -> dict:
        """Convert error to dictionary format."""
        return {
            "error_class": self.__class__.__name__,
            "message": self.message,
            "error_type": self.error_type.value if self.error_type else None,
            "recoverable": self.recoverable,
            "suggested_action": self.suggested_action,
        }


class FieldElementError(QHeineError):
    """Raised when a rational function would have a zero denominator."""

    def __init__(self, message: str = "zero denominator is not a field element"):
        super().__init__(
            message=message,
            error_type=ErrorType.FIELD_ERROR,
            recoverable=False,
            suggested_action="Check the construction of the rational function"
        )


class PoleError(QHeineError):
    """Raised when a substitution or evaluation lands on a pole."""

    def __init__(self, message: str, factor: Optional[str] = None):
        """
        Initialize pole error.

        Args:
            message: Error description
            factor: The offending factor, if known
        """
        super().__init__(
            message=message,
            error_type=ErrorType.POLE_ERROR,
            recoverable=True,
            suggested_action="Choose a different substitution value or sample point"
        )
        self.factor = factor


class ParseError(QHeineError):
    """Raised when an expression, shift or JSON document cannot be parsed."""

    def __init__(self, message: str, text: Optional[str] = None):
        super().__init__(
            message=message,
            error_type=ErrorType.PARSE_ERROR,
            recoverable=False,
            suggested_action="Use the documented expression or shift grammar"
        )
        self.text = text


class PreconditionError(QHeineError):
    """Raised when an operation's precondition does not hold."""

    def __init__(self, message: str, operation: Optional[str] = None):
        super().__init__(
            message=message,
            error_type=ErrorType.PRECONDITION_ERROR,
            recoverable=False,
            suggested_action=f"Check the inputs of {operation or 'the operation'}"
        )
        self.operation = operation


class SynthesisError(QHeineError):
    """Raised when a contiguous relation cannot be synthesized."""

    def __init__(self, message: str, shifts: Optional[list] = None):
        super().__init__(
            message=message,
            error_type=ErrorType.SYNTHESIS_ERROR,
            recoverable=False,
            suggested_action="Report the shift triple; synthesis should never fail"
        )
        self.shifts = shifts or []


class SeriesError(QHeineError):
    """Raised when an operator cannot be applied exactly to a power series in z."""

    def __init__(self, message: str):
        super().__init__(
            message=message,
            error_type=ErrorType.SERIES_ERROR,
            recoverable=True,
            suggested_action="Left-clear the operator's denominators first"
        )


class NumericDomainError(QHeineError):
    """Raised when numerical evaluation leaves its domain of convergence."""

    def __init__(self, message: str, factor: Optional[str] = None):
        super().__init__(
            message=message,
            error_type=ErrorType.NUMERIC_DOMAIN_ERROR,
            recoverable=True,
            suggested_action="Resample the evaluation point"
        )
        self.factor = factor


class ClosureError(QHeineError):
    """Raised when a group closure exceeds its safety bound."""

    def __init__(self, message: str, bound: int):
        super().__init__(
            message=message,
            error_type=ErrorType.CLOSURE_ERROR,
            recoverable=False,
            suggested_action="Canonical forms are inconsistent; inspect trans_equal"
        )
        self.bound = bound


class VerificationError(QHeineError):
    """Raised when a verification cannot be completed."""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(
            message=message,
            error_type=ErrorType.VERIFICATION_ERROR,
            recoverable=True,
            suggested_action="Increase resampling budget or truncation order"
        )
        self.details = details or {}


class ConfigurationError(QHeineError):
    """Raised when configuration is invalid."""

    def __init__(self, message: str, config_key: Optional[str] = None):
        super().__init__(
            message=message,
            error_type=ErrorType.CONFIGURATION_ERROR,
            recoverable=False,
            suggested_action="Check config.yaml, catalog.yaml and environment variables"
        )
        self.config_key = config_key


# Recovery strategy mapping
ERROR_RECOVERY_STRATEGIES = {
    ErrorType.FIELD_ERROR: "fix_input",
    ErrorType.POLE_ERROR: "resample",
    ErrorType.PARSE_ERROR: "fix_input",
    ErrorType.PRECONDITION_ERROR: "fix_input",
    ErrorType.SYNTHESIS_ERROR: "report_bug",
    ErrorType.SERIES_ERROR: "left_clear",
    ErrorType.NUMERIC_DOMAIN_ERROR: "resample",
    ErrorType.CLOSURE_ERROR: "report_bug",
    ErrorType.VERIFICATION_ERROR: "raise_budget",
    ErrorType.CONFIGURATION_ERROR: "fix_config",
}


def get_recovery_strategy(error_type: ErrorType) -> str:
    """
    Get the recommended recovery strategy for an error type.

    Args:
        error_type: The type of error

    Returns:
        Recovery strategy name
    """
    return ERROR_RECOVERY_STRATEGIES.get(error_type, "manual_intervention")


def format_error_report(error: QHeineError) -> str:
    """
    Format an error for console output.

    Args:
        error: The error to format

    Returns:
        Human-readable multi-line description
    """
    parts = [
        f"Error Type: {error.error_type.value if error.error_type else 'Unknown'}",
        f"Message: {error.message}",
    ]

    if error.suggested_action:
        parts.append(f"Suggested Action: {error.suggested_action}")
    if error.error_type:
        parts.append(f"Recovery: {get_recovery_strategy(error.error_type)}")

    if isinstance(error, (PoleError, NumericDomainError)) and error.factor:
        parts.append(f"Factor: {error.factor}")
    elif isinstance(error, ParseError) and error.text is not None:
        parts.append(f"Input: {error.text!r}")
    elif isinstance(error, VerificationError) and error.details:
        parts.append(f"Details: {error.details}")

    return "\n".join(parts)
