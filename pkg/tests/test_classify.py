"""
Tests for the candidate enumeration, the factorization filter, the Heine
group and the excluded matrix.
"""

import pytest

from src.algebra.exactalg import RationalFunc
from src.algebra.paramgroup import ShiftOp, conjugate_shift, excluded_matrix, heine_matrix, swap_matrix
from src.classify import (
    enumerate_candidates,
    eqnow_invariance,
    filter_candidate,
    heine_group,
    reduce_to_z,
    run_classification,
)
from src.classify.candidates import (
    brute_force_box,
    canonical_representative,
    canonical_representatives,
    compare_with_table,
    kc_bound,
    satisfies_inequalities,
)
from src.classify.filter import eqjan3_lhs, survivors_modulo_inversion
from src.classify.group import generate_closure, generator_orders, z_fixing_matrices
from src.classify.lemimp import excluded_matrix_report, forced_ratios
from src.algebra.qterm import t_ab, t_h
from src.contiguous.ideal import generator
from src.utils.errors import ClosureError, PreconditionError


Z = ShiftOp.of(0, 0, 0, 1)
AC = ShiftOp.of(1, 0, 1, 0)
BC = ShiftOp.of(0, 1, 1, 0)


@pytest.mark.unit
class TestCandidates:
    """Enumeration of the shifts allowed by the inequalities."""

    def test_count(self):
        assert len(enumerate_candidates()) == 44
        assert ShiftOp.of(1, 1, 2, 1) in enumerate_candidates()

    def test_matches_brute_force(self):
        enumerated = sorted(Y.k for Y in enumerate_candidates())
        assert enumerated == sorted(brute_force_box(3))
        assert kc_bound() == 2

    def test_no_identity(self):
        assert all(not Y.is_identity for Y in enumerate_candidates())
        assert satisfies_inequalities((0, 0, 0, 0))

    def test_closed_under_symmetries(self):
        solutions = {Y.k for Y in enumerate_candidates()}
        for ka, kb, kc, kz in solutions:
            assert (-ka, -kb, -kc, -kz) in solutions
            assert (kb, ka, kc, kz) in solutions

    def test_canonical_representatives(self):
        reps = canonical_representatives(enumerate_candidates())
        assert len(reps) == 16
        assert canonical_representative((-1, 0, -1, 0)) == (1, 0, 1, 0)
        assert canonical_representative((0, -1, -1, 0)) == (1, 0, 1, 0)

    def test_table_comparison(self):
        table = compare_with_table(enumerate_candidates())
        assert table["duplicated"] == [(1, -1, 0, -1)]
        assert table["uncovered"] == []
        assert table["missing"] == [(0, 0, 1, 0)]


@pytest.mark.unit
class TestFilter:
    """The denominator-shape test on the witness."""

    @pytest.mark.parametrize("Y", [Z, AC, BC])
    def test_expected_survivors_pass(self, Y):
        outcome = filter_candidate(Y)
        assert outcome.passed
        unit, b1, b2 = outcome.factorization
        assert unit * b1 * b2 == outcome.witness.den

    @pytest.mark.parametrize("k", [(1, 0, 0, 0), (0, 0, 1, 0), (1, 1, 1, 0), (1, -1, 0, 0), (1, 1, 2, 1)])
    def test_others_fail(self, k):
        assert not filter_candidate(ShiftOp(k)).passed

    def test_identity_rejected(self):
        with pytest.raises(PreconditionError):
            filter_candidate(ShiftOp.identity())

    def test_record(self):
        record = filter_candidate(Z).to_record()
        assert record.shift == [0, 0, 0, 1]
        assert record.passed
        assert record.factorization and len(record.factorization) == 3

    def test_survivors_modulo_inversion(self):
        passed = [Z, Z.inverse(), AC.inverse(), BC]
        assert survivors_modulo_inversion(passed) == [[1, 0, 1, 0], [0, 1, 1, 0], [0, 0, 0, 1]]


@pytest.mark.slow
class TestClassificationRun:
    """The full classification run."""

    @pytest.fixture(scope="class")
    def report(self):
        return run_classification(workers=1)

    def test_survivors(self, report):
        assert report.survivors == [[1, 0, 1, 0], [0, 1, 1, 0], [0, 0, 0, 1]]
        assert report.survivors_match

    def test_raw_survivors_reduce(self, report):
        allowed = {(0, 0, 0, 1), (1, 0, 1, 0), (0, 1, 1, 0)}
        for k in report.survivors_raw:
            assert tuple(k) in allowed or tuple(-x for x in k) in allowed

    def test_every_candidate_has_a_witness(self, report):
        assert report.candidate_count == 44
        assert len(report.candidates) == 44
        assert all(r.witness and r.denominator for r in report.candidates)

    def test_thread_pool_gives_the_same_report(self, report):
        parallel = run_classification(workers=4)
        assert parallel.survivors == report.survivors
        assert [r.passed for r in parallel.candidates] == [r.passed for r in report.candidates]


@pytest.mark.unit
class TestHeineGroup:
    """The group generated by t_h and t_ab."""

    def test_order(self):
        elements = heine_group()
        assert len(elements) == 12
        assert len(set(elements)) == 12
        assert elements[0].is_identity and elements[0].word == ""

    def test_generator_orders(self):
        assert generator_orders() == {"t_h": 2, "t_ab": 2, "t_h t_ab": 6}

    def test_contains_generators(self):
        elements = heine_group()
        assert t_h() in elements
        assert t_ab() in elements

    def test_closed_under_multiplication(self):
        elements = set(heine_group())
        for s in elements:
            for t in elements:
                assert s * t in elements

    def test_safety_bound(self):
        with pytest.raises(ClosureError):
            generate_closure([t_h(), t_ab()], 5)

    def test_z_fixing_matrices(self):
        matrices = z_fixing_matrices()
        assert swap_matrix() in matrices
        assert all(conjugate_shift(L, Z) == Z for L in matrices)


@pytest.mark.unit
class TestInvariance:
    """The filter identity under matrices fixing Z."""

    def test_holds_for_z_fixing_group_elements(self):
        for L in z_fixing_matrices():
            assert eqnow_invariance(L)

    def test_mutation_control(self):
        # a -> a/q fixes Z under conjugation but not the left side
        assert not eqnow_invariance(ShiftOp.of(1, 0, 0, 0).to_matrix())

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            eqnow_invariance(heine_matrix())

    def test_left_side(self):
        assert not eqjan3_lhs().is_zero
        assert isinstance(eqjan3_lhs(), RationalFunc)

    @pytest.mark.parametrize("Y", [Z, AC, BC])
    def test_reduce_to_z(self, Y):
        L = reduce_to_z(Y)
        assert L is not None
        assert conjugate_shift(L, Y) == Z

    def test_reduce_to_z_none(self):
        assert reduce_to_z(ShiftOp.of(1, 0, 0, 0)) is None


@pytest.mark.unit
class TestExcludedMatrix:
    """Prefactor ratios forced by the excluded matrix."""

    def test_involution(self):
        L = excluded_matrix()
        assert (L @ L).is_identity

    def test_preserves_filter_identity(self):
        assert eqnow_invariance(excluded_matrix())

    def test_forced_ratios_need_three_terms(self):
        with pytest.raises(PreconditionError):
            forced_ratios(excluded_matrix(), generator("P_a") + generator("Q_c"))

    def test_report(self):
        report = excluded_matrix_report()
        assert report.preserves_filter_identity
        assert {r.forced_by for r in report.ratios} == {"P_a", "P_b", "ABC relation"}
        assert all(r.prefactor_matches for r in report.ratios)
        assert report.all_match
