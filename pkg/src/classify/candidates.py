"""
Candidates for Y = L^-1 Z L.

A symmetry f L forces the inequalities

    |k_a| <= 1, |k_b| <= 1, |k_z| <= 1,
    |k_b - k_c| <= 1, |k_a - k_c| <= 1, |k_a + k_b - k_c + k_z| <= 1

on the exponents of Y, and Y is not the identity.
"""

from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

from src.algebra.paramgroup import ShiftOp
from src.utils.config import get_config
from src.utils.errors import VerificationError
from src.utils.logger import get_logger


logger = get_logger("classify.candidates")

Vector = Tuple[int, int, int, int]


def satisfies_inequalities(k: Vector) -> bool:
    ka, kb, kc, kz = k
    return (
        abs(ka) <= 1 and abs(kb) <= 1 and abs(kz) <= 1
        and abs(kb - kc) <= 1 and abs(ka - kc) <= 1
        and abs(ka + kb - kc + kz) <= 1
    )


def kc_bound() -> int:
    """|k_c| <= |k_a| + |k_a - k_c| <= 2, confirmed on a wider box."""
    bound = 2
    if any(abs(k[2]) > bound for k in brute_force_box(bound + 1)):
        raise VerificationError("a solution exceeds |k_c| <= 2", details={"bound": bound})
    return bound


def brute_force_box(radius: int) -> List[Vector]:
    """All nonzero solutions with every |k_i| <= radius."""
    rng = range(-radius, radius + 1)
    return [
        k for k in product(rng, repeat=4)
        if any(k) and satisfies_inequalities(k)
    ]


def enumerate_candidates() -> List[ShiftOp]:
    """Every nonzero solution of the inequalities, sorted."""
    bound = kc_bound()
    solutions = [
        (ka, kb, kc, kz)
        for ka, kb, kz in product((-1, 0, 1), repeat=3)
        for kc in range(-bound, bound + 1)
        if any((ka, kb, kc, kz)) and satisfies_inequalities((ka, kb, kc, kz))
    ]
    return [ShiftOp(k) for k in sorted(solutions)]


def orbit(k: Vector) -> FrozenSet[Vector]:
    """Images of k under inversion k -> -k and the a <-> b swap."""
    ka, kb, kc, kz = k
    images = {(ka, kb, kc, kz), (kb, ka, kc, kz)}
    images |= {tuple(-x for x in v) for v in images}
    return frozenset(images)


def canonical_representative(k: Vector) -> Vector:
    """Lexicographically largest element of the orbit."""
    return max(orbit(k))


def canonical_representatives(candidates: Iterable[ShiftOp]) -> List[Vector]:
    return sorted({canonical_representative(Y.k) for Y in candidates}, reverse=True)


def _loose_orbit(k: Vector) -> Set[Vector]:
    """Orbit under inversion, the a <-> b swap and the sign change of k_a alone."""
    seen: Set[Vector] = {k}
    frontier = [k]
    while frontier:
        ka, kb, kc, kz = frontier.pop()
        for image in ((-ka, -kb, -kc, -kz), (kb, ka, kc, kz), (-ka, kb, kc, kz)):
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    return seen


def table_rows() -> List[Vector]:
    return [tuple(row) for row in get_config().catalog["candidate_table"]]


def compare_with_table(candidates: Iterable[ShiftOp]) -> Dict[str, List[Vector]]:
    """
    Compare the enumeration with the printed table.

    Returns:
        duplicated: rows printed more than once
        uncovered: rows with no image (inversion, a <-> b, k_a -> -k_a) among the solutions
        missing: canonical representatives whose orbit has no printed row
    """
    solutions = {Y.k for Y in candidates}
    rows = table_rows()

    duplicated = sorted({row for row in rows if rows.count(row) > 1})
    uncovered = [row for row in dict.fromkeys(rows) if not (_loose_orbit(row) & solutions)]
    covered_orbits = {canonical_representative(s) for row in rows for s in _loose_orbit(row) & solutions}
    missing = [rep for rep in canonical_representatives(ShiftOp(s) for s in solutions)
               if rep not in covered_orbits]

    for row in duplicated:
        logger.warning("candidate table row is printed twice", row=list(row))
    for row in uncovered:
        logger.warning("candidate table row is not a solution up to symmetry", row=list(row))
    for rep in missing:
        logger.warning("solution orbit has no row in the candidate table", representative=list(rep))
    return {"duplicated": duplicated, "uncovered": uncovered, "missing": missing}
