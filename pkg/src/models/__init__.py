"""Data models and schemas for qheine."""

from src.models.schemas import (
    ErrorType,
    OutputFormat,
    EvalConfig,
    RelationModel,
    OperatorModel,
    TransformationModel,
    GeneratorReport,
    RelationReport,
    MembershipReport,
    DivisibilityReport,
    ClassificationReport,
    GroupReport,
    SymmetryReport,
    RatioReport,
    IdentityCheck,
    EvaluationReport,
    ExcludedMatrixReport,
)

__all__ = [
    "ErrorType",
    "OutputFormat",
    "EvalConfig",
    "RelationModel",
    "OperatorModel",
    "TransformationModel",
    "GeneratorReport",
    "RelationReport",
    "MembershipReport",
    "DivisibilityReport",
    "ClassificationReport",
    "GroupReport",
    "SymmetryReport",
    "RatioReport",
    "IdentityCheck",
    "EvaluationReport",
    "ExcludedMatrixReport",
]
