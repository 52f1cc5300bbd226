"""
Pydantic data models for qheine.

These models define the reports produced by the engines and the JSON wire
formats for relations, operators and transformations, with full type safety
and validation.
"""

from enum import Enum
from typing import List, Dict, Optional
from datetime import datetime
from pydantic import BaseModel, Field, field_validator, model_validator


class ErrorType(str, Enum):
    """Error categories for recovery strategies."""
    FIELD_ERROR = "field_error"
    POLE_ERROR = "pole_error"
    PARSE_ERROR = "parse_error"
    PRECONDITION_ERROR = "precondition_error"
    SYNTHESIS_ERROR = "synthesis_error"
    SERIES_ERROR = "series_error"
    NUMERIC_DOMAIN_ERROR = "numeric_domain_error"
    CLOSURE_ERROR = "closure_error"
    VERIFICATION_ERROR = "verification_error"
    CONFIGURATION_ERROR = "configuration_error"


class OutputFormat(str, Enum):
    """Rendering formats offered by the CLI."""
    TEXT = "text"
    LATEX = "latex"
    JSON = "json"


class EvalConfig(BaseModel):
    """Precision and acceptance settings for numerical evaluation."""
    precision: int = Field(default=128, ge=53, description="Working significand bits")
    tol: float = Field(default=1e-10, gt=0, description="Relative acceptance tolerance")
    tail_eps: float = Field(default=1e-30, gt=0, description="Truncation threshold")
    samples: int = Field(default=20, ge=1)
    seed: int = Field(default=20240501)
    max_resample: int = Field(default=2000, ge=1)

    # Sampling distribution
    param_radius: float = Field(default=0.9, gt=0, lt=1)
    q_radius_min: float = Field(default=0.2, gt=0, lt=1)
    q_radius_max: float = Field(default=0.6, gt=0, lt=1)
    z_radius: float = Field(default=0.5, gt=0, lt=1)
    pole_margin: float = Field(default=0.05, gt=0)
    max_arg_modulus: float = Field(default=0.9, gt=0, lt=1)

    @model_validator(mode="after")
    def check_thresholds(self) -> "EvalConfig":
        if self.tail_eps >= self.tol:
            raise ValueError("tail_eps must be smaller than tol")
        if self.q_radius_min > self.q_radius_max:
            raise ValueError("q_radius_min must not exceed q_radius_max")
        return self


# ---------------------------------------------------------------------------
# Wire formats
# ---------------------------------------------------------------------------

class PochhammerFactorModel(BaseModel):
    """One factor (base; q)_inf ** mult of a q-hypergeometric term."""
    base: str
    mult: int


class QHypTermModel(BaseModel):
    """JSON form of a q-hypergeometric term."""
    rat: str
    poch: List[PochhammerFactorModel] = Field(default_factory=list)


class TransformationModel(BaseModel):
    """JSON form of an element f·L of the transformation group."""
    term: QHypTermModel
    matrix: List[int]
    word: Optional[str] = None

    @field_validator("matrix")
    @classmethod
    def validate_matrix(cls, v):
        if len(v) != 25:
            raise ValueError("matrix must be 25 integers in row-major order")
        return v


class OperatorTermModel(BaseModel):
    """One term coeff·shift of a difference operator."""
    shift: List[int]
    coeff: str

    @field_validator("shift")
    @classmethod
    def validate_shift(cls, v):
        if len(v) != 4:
            raise ValueError("shift must be [k_a, k_b, k_c, k_z]")
        return v


class OperatorModel(BaseModel):
    """JSON form of a difference operator."""
    terms: List[OperatorTermModel] = Field(default_factory=list)


class RelationModel(BaseModel):
    """JSON form of a three-term contiguous relation."""
    shifts: List[List[int]]
    coeffs: List[str]
    verified_to_order: Optional[int] = None

    @model_validator(mode="after")
    def check_arity(self) -> "RelationModel":
        if len(self.shifts) != 3 or len(self.coeffs) != 3:
            raise ValueError("a relation has exactly three shifts and three coefficients")
        for shift in self.shifts:
            if len(shift) != 4:
                raise ValueError("each shift must be [k_a, k_b, k_c, k_z]")
        return self


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

class GeneratorCheck(BaseModel):
    """Series verification of a single ideal generator."""
    name: str
    passed: bool
    truncation: int
    elapsed_seconds: float = 0.0


class GeneratorReport(BaseModel):
    """Result of verifying the seven ideal generators."""
    truncation: int
    checks: List[GeneratorCheck] = Field(default_factory=list)
    abc_relation: Optional[GeneratorCheck] = None
    derivations: List[GeneratorCheck] = Field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        extra = [self.abc_relation] if self.abc_relation else []
        return all(check.passed for check in self.checks + extra + self.derivations)


class RelationReport(BaseModel):
    """A synthesized relation together with its series verification."""
    relation: RelationModel
    text: str
    verified: bool
    truncation: int
    alternative_agrees: Optional[bool] = None
    divisibility: List["DivisibilityReport"] = Field(default_factory=list)
    elapsed_seconds: float = 0.0


class MembershipReport(BaseModel):
    """Outcome of the exact ideal-membership decision."""
    member: bool
    initial_length: int
    reduction_steps: int
    residual_length: int
    residual: Optional[OperatorModel] = None
    series_check: Optional[bool] = None


class DivisibilityClaim(BaseModel):
    """One divisibility claim (var - q^-j) | p_i and what was observed."""
    polynomial: str
    j: int
    expected_divisible: bool
    observed_divisible: bool

    @property
    def holds(self) -> bool:
        return self.expected_divisible == self.observed_divisible


class DivisibilityReport(BaseModel):
    """All divisibility claims for one relation."""
    variable: str
    exponents: List[int]
    claims: List[DivisibilityClaim] = Field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(claim.holds for claim in self.claims)


class CandidateRecord(BaseModel):
    """Filter outcome for one candidate Y = L^-1 Z L."""
    shift: List[int]
    passed: bool
    witness: str
    denominator: str
    factorization: Optional[List[str]] = None
    elapsed_seconds: float = 0.0


class ClassificationReport(BaseModel):
    """Full audit record of the classification run."""
    candidate_count: int
    canonical_representatives: List[List[int]] = Field(default_factory=list)
    candidates: List[CandidateRecord] = Field(default_factory=list)
    survivors_raw: List[List[int]] = Field(default_factory=list)
    survivors: List[List[int]] = Field(default_factory=list)
    survivors_match: bool = False
    uncovered_table_rows: List[List[int]] = Field(default_factory=list)
    duplicated_table_rows: List[List[int]] = Field(default_factory=list)
    missing_table_orbits: List[List[int]] = Field(default_factory=list)
    timings: Dict[str, float] = Field(default_factory=dict)
    created_at: datetime = Field(default_factory=datetime.now)


class GroupElementRecord(BaseModel):
    """One element of the Heine group with the word that produced it."""
    word: str
    order: int
    transformation: TransformationModel


class GroupReport(BaseModel):
    """Listing of the group generated by t_h and t_ab."""
    order: int
    elements: List[GroupElementRecord] = Field(default_factory=list)
    generator_orders: Dict[str, int] = Field(default_factory=dict)
    z_fixing_invariance: Dict[str, bool] = Field(default_factory=dict)

    @property
    def structure_ok(self) -> bool:
        return (self.order == 12
                and self.generator_orders == {"t_h": 2, "t_ab": 2, "t_h t_ab": 6}
                and all(self.z_fixing_invariance.values()))


class SymmetryReport(BaseModel):
    """Pointwise numerical verification of one transformation."""
    word: str
    samples: int
    max_rel_error: float
    tol: float
    resamples: int = 0

    @property
    def passed(self) -> bool:
        return self.max_rel_error < self.tol


class RatioCheck(BaseModel):
    """Check of one prefactor shift ratio P(g)/g."""
    shift: List[int]
    expected: str
    exact_match: bool
    max_rel_error: float


class RatioReport(BaseModel):
    """Exact and numerical checks of the prefactor g's shift ratios."""
    checks: List[RatioCheck] = Field(default_factory=list)
    tol: float

    @property
    def all_passed(self) -> bool:
        return all(c.exact_match and c.max_rel_error < self.tol for c in self.checks)


class ForcedRatioRecord(BaseModel):
    """A prefactor shift ratio forced by conjugating an ideal element."""
    shift: List[int]
    forced_by: str
    forced: str
    stated: str
    forced_matches: bool
    prefactor_matches: bool


class ExcludedMatrixReport(BaseModel):
    """Exact analysis of the excluded matrix and its would-be prefactor."""
    matrix: List[int]
    preserves_filter_identity: bool
    ratios: List[ForcedRatioRecord] = Field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return all(r.forced_matches and r.prefactor_matches for r in self.ratios)


class EvaluationReport(BaseModel):
    """Numerical value of 2phi1 at one point."""
    point: Dict[str, str]
    value: str
    precision: int


class IdentityCheck(BaseModel):
    """A numerical identity checked at a batch of sample points."""
    name: str
    samples: int
    max_rel_error: float
    tol: float
    passed: bool


class VerificationSuiteReport(BaseModel):
    """Numerical checks run by ``verify-symmetry``."""
    symmetries: List[SymmetryReport] = Field(default_factory=list)
    ratios: Optional[RatioReport] = None
    excluded_matrix: Optional[ExcludedMatrixReport] = None
    identities: List[IdentityCheck] = Field(default_factory=list)
    precision: int = 128

    @property
    def passed(self) -> bool:
        ok = all(s.passed for s in self.symmetries) and all(c.passed for c in self.identities)
        if self.ratios is not None:
            ok = ok and self.ratios.all_passed
        if self.excluded_matrix is not None:
            ok = ok and self.excluded_matrix.all_match
        return ok


RelationReport.model_rebuild()
