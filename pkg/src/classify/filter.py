"""
The factorization filter on candidates Y = L^-1 Z L.

For a symmetry f L, the relation f Y + g + h Y^-1 in I forces

    (az + bz - c - q)(aqz + bqz - c - q) / ((c - abz) q (1 - z)) = L(g Y(g) / (f Y(h))).

L permutes monomials up to units, so the reduced denominator of the witness
g Y(g) / (f Y(h)) must factor as monomial * binomial * binomial. Candidates
whose witness fails this are discarded.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

from src.algebra.exactalg import LaurentPoly, RationalFunc, binomial_pair_factor, parse_rational
from src.algebra.paramgroup import ShiftOp
from src.classify.candidates import canonical_representatives, compare_with_table, enumerate_candidates
from src.contiguous.synthesis import three_term
from src.models.schemas import CandidateRecord, ClassificationReport
from src.utils.config import get_config
from src.utils.errors import PreconditionError
from src.utils.logger import get_logger


logger = get_logger("classify.filter")

EQJAN3_TEXT = "(a*z + b*z - c - q)*(a*q*z + b*q*z - c - q) / ((c - a*b*z)*q*(1 - z))"


@lru_cache(maxsize=None)
def eqjan3_lhs() -> RationalFunc:
    """The left side of the filter identity, in canonical form."""
    return parse_rational(EQJAN3_TEXT)


@dataclass(frozen=True)
class FilterOutcome:
    shift: ShiftOp
    passed: bool
    witness: RationalFunc
    factorization: Optional[Tuple[LaurentPoly, LaurentPoly, LaurentPoly]]
    elapsed_seconds: float

    def to_record(self) -> CandidateRecord:
        return CandidateRecord(
            shift=self.shift.to_list(),
            passed=self.passed,
            witness=self.witness.to_text(),
            denominator=self.witness.den.to_text(),
            factorization=[p.to_text() for p in self.factorization] if self.factorization else None,
            elapsed_seconds=round(self.elapsed_seconds, 4),
        )


def witness(Y: ShiftOp) -> RationalFunc:
    """g Y(g) / (f Y(h)) for the relation f Y + g + h Y^-1 in I."""
    rel = three_term(Y, ShiftOp.identity(), Y.inverse())
    f, g, h = (RationalFunc.from_laurent(p) for p in rel.coeffs)
    return g * Y.act(g) / (f * Y.act(h))


def filter_candidate(Y: ShiftOp) -> FilterOutcome:
    """
    Apply the denominator-shape test to Y.

    Raises:
        PreconditionError: Y is the identity
    """
    if Y.is_identity:
        raise PreconditionError("Y = L^-1 Z L cannot be the identity", operation="filter_candidate")
    start = time.perf_counter()
    w = witness(Y)
    factorization = binomial_pair_factor(w.den)
    return FilterOutcome(
        shift=Y,
        passed=factorization is not None,
        witness=w,
        factorization=factorization,
        elapsed_seconds=time.perf_counter() - start,
    )


def survivors_modulo_inversion(passed: List[ShiftOp]) -> List[List[int]]:
    """One of each pair {Y, Y^-1}: the one whose first nonzero exponent is positive."""
    keep = set()
    for Y in passed:
        first = next(x for x in Y.k if x)
        keep.add(Y.k if first > 0 else Y.inverse().k)
    return [list(k) for k in sorted(keep, reverse=True)]


def run_classification(workers: Optional[int] = None) -> ClassificationReport:
    """
    Filter every candidate and compare the survivors with {Z, AC, BC}.

    Filter calls are independent; with ``workers > 1`` they run in a thread
    pool. Records are sorted by shift, so the report does not depend on the
    scheduling.
    """
    config = get_config()
    workers = workers or config.classification.workers
    timings = {}

    start = time.perf_counter()
    candidates = enumerate_candidates()
    table = compare_with_table(candidates)
    timings["enumerate"] = round(time.perf_counter() - start, 4)

    start = time.perf_counter()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(filter_candidate, candidates))
    else:
        outcomes = [filter_candidate(Y) for Y in candidates]
    timings["filter"] = round(time.perf_counter() - start, 4)

    outcomes.sort(key=lambda o: o.shift.k)
    passed = [o.shift for o in outcomes if o.passed]
    survivors = survivors_modulo_inversion(passed)
    expected = sorted((list(k) for k in config.expected_survivors), reverse=True)
    match = survivors == expected
    if not match:
        logger.warning("survivor set differs from the expected one",
                       survivors=survivors, expected=expected)

    logger.info("classification finished", candidates=len(candidates), survivors=survivors)
    return ClassificationReport(
        candidate_count=len(candidates),
        canonical_representatives=[list(k) for k in canonical_representatives(candidates)],
        candidates=[o.to_record() for o in outcomes],
        survivors_raw=[Y.to_list() for Y in passed],
        survivors=survivors,
        survivors_match=match,
        uncovered_table_rows=[list(r) for r in table["uncovered"]],
        duplicated_table_rows=[list(r) for r in table["duplicated"]],
        missing_table_orbits=[list(r) for r in table["missing"]],
        timings=timings,
    )
