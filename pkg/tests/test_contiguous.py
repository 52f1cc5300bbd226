"""
Tests for the annihilator ideal, three-term synthesis, membership,
divisibility patterns and the re-derivation of the generators.
"""

import random
import time
from itertools import combinations

import pytest

from src.algebra.diffop import DiffOperator, conjugate_op, op_multiply
from src.algebra.exactalg import RationalFunc, parse_laurent, parse_rational
from src.algebra.paramgroup import A, B, C, ONE, Z, ShiftOp, parse_shift
from src.algebra.qterm import t_ab, t_h
from src.classify.group import heine_group
from src.contiguous import (
    abc_relation,
    divisibility_pattern,
    generator,
    generators,
    ideal_membership,
    normal_form_to_Z1,
    three_term,
    verify_annihilates,
)
from src.contiguous.derivation import check_derivations, eliminate
from src.contiguous.ideal import GENERATOR_NAMES, first_nonvanishing_order
from src.contiguous.membership import reduce_operator
from src.contiguous.synthesis import relations_agree, shifts_with_degree_at_most, three_term_alternative
from src.utils.errors import PreconditionError, SynthesisError


def rf(text: str) -> RationalFunc:
    return parse_rational(text)


@pytest.fixture
def rng():
    """Seeded generator for property checks."""
    return random.Random(20240501)


def random_coefficient(rng: random.Random) -> RationalFunc:
    """A small nonzero rational function."""
    pieces = ["1", "a", "b", "c", "z", "q", "a*z", "c - 1", "b - q", "1 - a*b*z"]
    num = f"({rng.choice(pieces)}) + {rng.randint(1, 5)}"
    den = f"({rng.choice(pieces)}) + {rng.randint(6, 9)}"
    return rf(f"({num})/({den})")


@pytest.mark.unit
class TestGenerators:
    """The seven listed generators and the ABC relation."""

    def test_names(self):
        assert GENERATOR_NAMES == ("P_a", "P_b", "P_c", "Q_a", "Q_b", "Q_c", "R_z")
        assert len(generators()) == 7

    def test_p_a_as_listed(self):
        assert generator("P_a") == DiffOperator({A: rf("1 - a"), ONE: -1, Z: rf("a")})

    @pytest.mark.parametrize("name", GENERATOR_NAMES)
    def test_generator_annihilates(self, name):
        assert verify_annihilates(generator(name), 12)

    def test_abc_relation_annihilates(self):
        assert verify_annihilates(abc_relation(), 12)

    def test_truncation_one(self):
        assert all(verify_annihilates(D, 1) for D in generators())

    def test_series_method_agrees(self):
        for name in ("P_a", "Q_c", "R_z"):
            assert verify_annihilates(generator(name), 6, method="series")

    def test_mutated_generator_fails(self):
        mutated = DiffOperator({A: rf("1 - a"), ONE: -1, Z: rf("-a")})
        assert not verify_annihilates(mutated, 12)
        assert first_nonvanishing_order(mutated, 12) is not None

    def test_bad_arguments(self):
        with pytest.raises(PreconditionError):
            verify_annihilates(generator("P_a"), 0)
        with pytest.raises(PreconditionError):
            verify_annihilates(generator("P_a"), 4, method="guess")

    def test_short_operators_never_annihilate(self, rng):
        shifts = [ShiftOp(tuple(rng.randint(-2, 2) for _ in range(4))) for _ in range(120)]
        checked = 0
        for X, Y in zip(shifts[::2], shifts[1::2]):
            if X == Y:
                continue
            D = DiffOperator({X: random_coefficient(rng), Y: random_coefficient(rng)})
            assert not verify_annihilates(D, 8), D.to_text()
            checked += 1
        assert checked >= 50

    def test_conjugates_stay_in_the_ideal(self):
        p_a = generator("P_a")
        for t in heine_group():
            assert verify_annihilates(conjugate_op(t, p_a), 8), t.word


@pytest.mark.unit
class TestThreeTerm:
    """Synthesis of the unique three-term relations."""

    def test_recovers_p_a(self):
        rel = three_term(A, ONE, Z)
        assert rel.coeffs == (parse_laurent("1 - a"), parse_laurent("-1"), parse_laurent("a"))
        assert rel.to_text() == "(-1 * a + 1) * A + -1 + a * Z"

    def test_recovers_q_c_and_r_z(self):
        for name, shifts in (("Q_c", (C.inverse(), ONE, Z)), ("R_z", (Z, ONE, Z.inverse()))):
            rel = three_term(*shifts)
            listed = generator(name)
            ratio = RationalFunc.from_laurent(rel.coeffs[0]) / listed.coeff(shifts[0])
            for X, p in zip(rel.shifts, rel.coeffs):
                assert RationalFunc.from_laurent(p) == ratio * listed.coeff(X)

    def test_normal_form_base_cases(self):
        one, zero = parse_laurent("1"), parse_laurent("0")
        assert normal_form_to_Z1(ONE) == (one, zero, -one)
        assert normal_form_to_Z1(Z) == (one, -one, zero)

    def test_normal_form_is_in_the_ideal(self):
        for X in (A, C * C, parse_shift("A B^-1 Z")):
            px, pz, p1 = normal_form_to_Z1(X)
            assert verify_annihilates(DiffOperator({X: px, Z: pz, ONE: p1}), 10)

    @pytest.mark.parametrize("triple", [
        ("A", "B", "1"),
        ("A^2", "A", "1"),
        ("A C", "1", "Z"),
        ("A^2 Z", "1", "A^-1 B"),
        ("C^-1 Z^2", "B", "A^-1"),
    ])
    def test_synthesized_relations_annihilate(self, triple):
        shifts = [parse_shift(s) for s in triple]
        rel = three_term(*shifts)
        assert verify_annihilates(rel.to_operator(), 12)
        assert all(not p.is_zero for p in rel.coeffs)
        assert relations_agree(rel, three_term_alternative(*shifts))

    def test_coefficients_are_coprime_polynomials(self):
        rel = three_term(A * C, ONE, B.inverse())
        assert all(p.is_polynomial for p in rel.coeffs)
        assert rel.coeffs[2].leading_coeff() > 0

    def test_duplicate_shifts_rejected(self):
        with pytest.raises(PreconditionError):
            three_term(A, A, Z)

    def test_c_one_bc(self):
        rel = three_term(C, ONE, B * C)
        expected = (parse_laurent("b - c"), parse_laurent("-b*(1 - c)"), parse_laurent("c*(1 - b)"))
        assert rel.coeffs in (expected, tuple(-p for p in expected))

    def test_normal_form_of_a_inverse_is_q_a(self):
        expected = (parse_laurent("q*(c - a)"), parse_laurent("a*(a*b*z - c)"),
                    parse_laurent("-c*q + a*c + a*q - a**2*z"))
        assert normal_form_to_Z1(A.inverse()) in (expected, tuple(-p for p in expected))

    def test_normal_form_of_a_squared(self):
        px, pz, p1 = normal_form_to_Z1(A * A)
        assert verify_annihilates(DiffOperator({A * A: px, Z: pz, ONE: p1}), 24)

    def test_random_subset_is_fast(self, rng):
        shifts = shifts_with_degree_at_most(2)
        triples = [tuple(rng.sample(shifts, 3)) for _ in range(100)]
        start = time.time()
        relations = [three_term(*t) for t in triples]
        elapsed = time.time() - start
        assert elapsed < 30, f"too slow: {elapsed:.1f}s"
        for rel in relations[:10]:
            assert verify_annihilates(rel.to_operator(), 12)

@pytest.mark.unit
class TestMembership:
    """Exact membership by elimination."""

    def test_combination_of_generators(self):
        D = generator("P_a").left_scale(rf("1 + z")) + generator("Q_c").left_scale(rf("b/(1 - c)"))
        result = reduce_operator(D)
        assert result.member
        assert result.residual.is_zero
        assert result.steps >= 1
        assert ideal_membership(D)

    def test_shifted_generator(self):
        D = op_multiply(DiffOperator.shift(parse_shift("A B^-1")), generator("R_z"))
        assert ideal_membership(D)

    def test_non_member(self):
        D = generator("P_a") + DiffOperator.shift(A * A)
        result = reduce_operator(D)
        assert not result.member
        assert 1 <= result.residual.length <= 2

    def test_short_operator(self):
        assert not ideal_membership(DiffOperator({A: 1, B: -1}))
        assert ideal_membership(DiffOperator.zero())

    def test_membership_matches_series(self):
        D = generator("P_b").left_scale(rf("c")) + generator("Q_a")
        assert ideal_membership(D) == verify_annihilates(D, 10)


@pytest.mark.unit
class TestDivisibility:
    """Divisibility of the coefficients by x - q^-j."""

    @pytest.mark.parametrize("triple,variable", [
        (("A", "1", "A^-1"), "a"),
        (("A^2", "A", "1"), "a"),
        (("A^2 Z", "1", "A^-1 B"), "a"),
        (("B^2", "B C", "Z"), "b"),
        (("A B^2", "A^-1", "B^-1 C"), "b"),
    ])
    def test_claims_hold(self, triple, variable):
        rel = three_term(*(parse_shift(s) for s in triple))
        report = divisibility_pattern(rel, variable)
        assert report.claims
        assert report.all_hold, [c for c in report.claims if not c.holds]

    def test_automatic_variable(self):
        rel = three_term(parse_shift("B^2"), B, Z)
        assert divisibility_pattern(rel).variable == "b"

    def test_precondition(self):
        rel = three_term(A, ONE, Z)
        with pytest.raises(PreconditionError):
            divisibility_pattern(rel, "a")
        with pytest.raises(PreconditionError):
            divisibility_pattern(rel, "c")
        with pytest.raises(PreconditionError):
            divisibility_pattern(three_term(C, ONE, Z))


@pytest.mark.unit
class TestDerivation:
    """Generators rebuilt from P_a through the Heine symmetries."""

    def test_swap_gives_p_b(self):
        assert conjugate_op(t_ab(), generator("P_a")) == generator("P_b")

    def test_heine_conjugate_is_a_relation(self):
        image = conjugate_op(t_h(), generator("P_a"))
        assert image.length == 3
        assert verify_annihilates(image, 10)

    def test_conjugates_match_closed_forms(self):
        p_a = generator("P_a")
        th, tab = t_h(), t_ab()

        h_pa = conjugate_op(th, p_a)
        assert h_pa == DiffOperator({
            C: rf("(1 - c/b)/(1 - c)"), ONE: -1, B * C: rf("(c/b - c)/(1 - c)"),
        })

        hah_pa = conjugate_op(th, conjugate_op(tab, h_pa))
        assert hah_pa == DiffOperator({
            A: rf("1 - a*b*z/c"), ONE: -1, A * C: rf("(a*b*z/c)*(1 - c/b)/(1 - c)"),
        })

        hahah_pa = conjugate_op(th, conjugate_op(tab, hah_pa))
        assert hahah_pa == DiffOperator({
            parse_shift("A^-1 Z"): rf("(1 - c/a)/(1 - z)"), ONE: -1, Z: rf("(c/a)*(1 - a*b*z/c)/(1 - z)"),
        })

    def test_all_derivations_match(self):
        checks = check_derivations()
        assert {c.name for c in checks} == {"P_b", "P_c", "Q_a", "Q_b", "R_z"}
        assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]

    def test_eliminate_arity(self):
        with pytest.raises(SynthesisError):
            eliminate([generator("P_a")], [A])


@pytest.mark.slow
class TestAtFullOrder:
    """Generators, conjugates and synthesized relations at the full check order."""

    def test_generators_to_order_24(self):
        for D in [*generators(), abc_relation()]:
            assert verify_annihilates(D, 24), D.to_text()

    def test_every_conjugate_of_every_generator(self):
        for t in heine_group():
            for name in GENERATOR_NAMES:
                assert verify_annihilates(conjugate_op(t, generator(name)), 8), (t.word, name)

    def test_all_triples_up_to_degree_two(self):
        shifts = shifts_with_degree_at_most(2)
        assert len(shifts) == 41
        start = time.time()
        for triple in combinations(shifts, 3):
            rel = three_term(*triple)
            assert all(not p.is_zero for p in rel.coeffs)
            assert verify_annihilates(rel.to_operator(), 24), rel.to_text()
            assert relations_agree(rel, three_term_alternative(*triple))
        assert time.time() - start < 600

    @pytest.mark.parametrize("variable", ["a", "b"])
    def test_divisibility_on_random_relations(self, rng, variable):
        idx = "ab".index(variable)
        shifts = shifts_with_degree_at_most(3)
        checked = 0
        while checked < 25:
            triple = rng.sample(shifts, 3)
            if len({X.k[idx] for X in triple}) != 3:
                continue
            report = divisibility_pattern(three_term(*triple), variable)
            assert report.all_hold, [c for c in report.claims if not c.holds]
            checked += 1
