"""
Unit tests for the exact algebra layer.

Covers rational function arithmetic, the parameter group, q-hypergeometric
terms, the truncated series and the operator ring.
"""

import pytest

from src.algebra.diffop import (
    DiffOperator,
    apply_to_series,
    conjugate_op,
    left_clear,
    normalize_operator,
    op_multiply,
    operators_proportional,
    z_expansion,
)
from src.algebra.exactalg import (
    LaurentPoly,
    Monomial,
    RING,
    RationalFunc,
    binomial_pair_factor,
    divides_at_qpower,
    parse_laurent,
    parse_rational,
    poly_gcd,
    rf_normalize,
    substitute,
)
from src.algebra.paramgroup import (
    A,
    B,
    C,
    ONE,
    Z,
    ParamMatrix,
    ShiftOp,
    act_on_function,
    conjugate_shift,
    excluded_matrix,
    heine_matrix,
    parse_shift,
    swap_matrix,
)
from src.algebra.qterm import (
    QHypTerm,
    Transformation,
    g_prefactor,
    g_stated_ratios,
    monomial_from_text,
    shift_ratio,
    t_ab,
    t_h,
    trans_inverse,
    trans_multiply,
    trans_order,
    trans_power,
)
from src.algebra.series import phi21_coefficient, phi21_series
from src.utils.errors import FieldElementError, ParseError, PoleError, PreconditionError, SeriesError


def rf(text: str) -> RationalFunc:
    return parse_rational(text)


def mono(text: str) -> Monomial:
    return monomial_from_text(text)


@pytest.mark.unit
class TestRationalFunc:
    """Canonical forms and field arithmetic in Q(a, b, c, z, q)."""

    def test_structural_equality_is_mathematical_equality(self):
        assert rf("(a**2 - 1)/(a - 1)") == rf("a + 1")
        assert rf("(c - a*b*z)/(a*b*z - c)") == rf("-1")
        assert rf("a/(a*b)") == rf("1/b")

    def test_field_operations(self):
        x = rf("(1 - a)/(1 - c)")
        y = rf("z/(1 - a)")
        assert x * y == rf("z/(1 - c)")
        assert x + y - y == x
        assert (x / x).is_one
        assert x * x.inverse() == RationalFunc.one()
        assert x ** -2 == (x * x).inverse()

    def test_denominator_is_normalized(self):
        r = rf("1/(2*q - 2*a*q)")
        # content and monomial units live in the numerator
        assert r.den == parse_laurent("a - 1") or r.den == parse_laurent("1 - a")
        assert r.den.leading_coeff() > 0
        assert r.den.is_polynomial

    def test_zero_has_no_inverse(self):
        with pytest.raises(FieldElementError):
            RationalFunc.zero().inverse()

    def test_zero_denominator_rejected(self):
        with pytest.raises(FieldElementError):
            rf_normalize(LaurentPoly.one(), LaurentPoly.zero())

    def test_text_round_trip(self):
        for text in ("(1 - a)*(1 - b*q)/((1 - q)*(1 - c))", "a**-2*z + q", "c*(c - q)*(1 - c)/(z*(c - a)*(c - b))"):
            r = rf(text)
            assert parse_rational(r.to_text()) == r

    def test_canonical_text(self):
        assert parse_laurent("1 - a").to_text() == "-1 * a + 1"
        assert parse_laurent("a*z - 2*b").to_text() == "a z - 2 * b"

    def test_monomial_content_moves_to_the_offset(self):
        a, b, c, z, q = RING.gens
        p = LaurentPoly(6 * a**3 * b * q - 4 * a**2 * b**2 * c * q + 2 * a**2 * b * q)
        assert p.offset == (2, 1, 0, 0, 1)
        assert p.poly == 6 * a - 4 * b * c + 2
        assert p == parse_laurent("2*a**2*b*q*(3*a - 2*b*c + 1)")
        assert LaurentPoly.one().is_one and RationalFunc.zero().is_zero

    def test_unknown_symbol_rejected(self):
        with pytest.raises(ParseError):
            rf("x + a")

    def test_empty_text_rejected(self):
        with pytest.raises(ParseError):
            rf("   ")

    def test_laurent_rejects_true_denominator(self):
        with pytest.raises(ParseError):
            parse_laurent("1/(1 - a)")
        assert parse_laurent("a**-1 + q").terms()


@pytest.mark.unit
class TestPolynomialTools:
    """gcd, substitution, divisibility and binomial-pair factorization."""

    def test_gcd_up_to_units(self):
        g = poly_gcd(parse_laurent("(1 - a)*(1 + b)"), parse_laurent("a*z*(1 - a)*(1 - b)"))
        assert g.associated(parse_laurent("1 - a"))

    def test_gcd_of_zeros(self):
        with pytest.raises(PreconditionError):
            poly_gcd(LaurentPoly.zero(), LaurentPoly.zero())

    def test_substitute_monomial(self):
        f = rf("(1 - a*q)/(1 - b)")
        assert substitute(f, "a", RationalFunc.variable("b")) == rf("(1 - b*q)/(1 - b)")

    def test_substitute_pole(self):
        with pytest.raises(PoleError):
            substitute(rf("1/(a - q)"), "a", RationalFunc.variable("q"))

    def test_substitute_rational_value(self):
        assert substitute(rf("a**2 + z"), "a", rf("1/(1 - z)")) == rf("1/(1 - z)**2 + z")

    def test_divides_at_qpower(self):
        p = parse_laurent("(1 - a*q**2)*(1 - b)")
        assert divides_at_qpower(p, "a", 2)
        assert not divides_at_qpower(p, "a", 1)
        with pytest.raises(PreconditionError):
            divides_at_qpower(p, "q", 1)

    @pytest.mark.parametrize("text", [
        "(1 - a)*(1 - b*z)",
        "(c - a*b*z)*q*(1 - z)",
        "(a*z + b*z - c - q)*(a*q*z + b*q*z - c - q)",
        "1 - a**2*z**2",
        "(1 - a*z)**2",
    ])
    def test_binomial_pair_factor_found(self, text):
        p = parse_laurent(text)
        found = binomial_pair_factor(p)
        if found is None:
            # the trinomial product has four distinct terms only for generic shapes
            assert p.support_size > 4
            return
        unit, b1, b2 = found
        assert unit * b1 * b2 == p
        assert b1.support_size == 2 and b2.support_size == 2

    @pytest.mark.parametrize("text", ["1 + a + b", "1 + a + b + c", "(1 - a)*(1 - b)*(1 - c)", "1 + a**2"])
    def test_binomial_pair_factor_rejected(self, text):
        assert binomial_pair_factor(parse_laurent(text)) is None

    def test_binomial_pair_factor_of_zero(self):
        with pytest.raises(PreconditionError):
            binomial_pair_factor(LaurentPoly.zero())


@pytest.mark.unit
class TestParamGroup:
    """Shift operators and the parameter matrices."""

    @pytest.mark.parametrize("text,expected", [
        ("A^2 C Z^-1", (2, 0, 1, -1)),
        ("ABC", (1, 1, 1, 0)),
        ("A^{-2} B", (-2, 1, 0, 0)),
        ("1", (0, 0, 0, 0)),
        ("[1, 0, -1, 0]", (1, 0, -1, 0)),
        ("Z A Z", (1, 0, 0, 2)),
    ])
    def test_parse_shift(self, text, expected):
        assert parse_shift(text) == ShiftOp(expected)

    @pytest.mark.parametrize("text", ["", "X", "A^", "[1,2,3]", "A + B"])
    def test_parse_shift_rejects(self, text):
        with pytest.raises(ParseError):
            parse_shift(text)

    def test_shift_text_round_trip(self):
        for k in [(2, 0, 1, -1), (0, 0, 0, 0), (-1, -1, 3, 1)]:
            P = ShiftOp(k)
            assert parse_shift(P.to_text()) == P

    def test_shift_acts_by_q_powers(self):
        assert A.act(RationalFunc.variable("a")) == rf("a*q")
        assert Z.inverse().act(rf("a*z")) == rf("a*z/q")
        assert (A * C).act(rf("c - a")) == rf("c*q - a*q")

    def test_heine_matrix_is_an_involution(self):
        L = heine_matrix()
        assert (L @ L).is_identity
        assert L.inverse == L

    def test_heine_substitution(self):
        # f o L^-1 with L^-1 = L: (a, b, c, z) -> (c/b, z, az, b)
        L = heine_matrix()
        images = [act_on_function(L, RationalFunc.variable(v)) for v in "abcz"]
        assert images == [rf("c/b"), rf("z"), rf("a*z"), rf("b")]

    def test_conjugate_shift(self):
        assert conjugate_shift(swap_matrix(), A) == B
        assert conjugate_shift(swap_matrix(), Z) == Z
        assert conjugate_shift(excluded_matrix(), Z) == Z

    def test_shift_embedding(self):
        P = ShiftOp.of(1, 2, 0, -1)
        assert P.to_matrix().shift_part() == P
        assert heine_matrix().shift_part() is None
        assert (P.to_matrix() @ P.inverse().to_matrix()).is_identity

    def test_matrix_validation(self):
        rows = [[2, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
        with pytest.raises(PreconditionError):
            ParamMatrix.from_rows(rows)
        rows[0][0] = 1
        rows[4] = [1, 0, 0, 0, 1]
        with pytest.raises(PreconditionError):
            ParamMatrix.from_rows(rows)

    def test_flat_round_trip(self):
        L = excluded_matrix()
        assert ParamMatrix.from_flat(L.flat()) == L
        with pytest.raises(ParseError):
            ParamMatrix.from_flat([1, 0, 0])


@pytest.mark.unit
class TestQHypTerm:
    """q-hypergeometric terms and the transformation group."""

    def test_q_power_folded_into_rational_part(self):
        # (aq; q)_inf = (a; q)_inf / (1 - a)
        left = QHypTerm(RationalFunc.one(), [(mono("a*q"), 1)])
        right = QHypTerm(rf("1/(1 - a)"), [(mono("a"), 1)])
        assert left == right

    def test_vanishing_pochhammer_rejected(self):
        with pytest.raises(FieldElementError):
            QHypTerm(RationalFunc.one(), [(Monomial(), 1)])

    def test_shift_ratio(self):
        f = QHypTerm.pochhammer_quotient([mono("a")], [mono("c")])
        assert shift_ratio(f, A) == rf("1/(1 - a)")
        assert shift_ratio(f, C) == rf("1 - c")
        assert shift_ratio(f, A.inverse()) == rf("1 - a/q")
        assert shift_ratio(f, ONE).is_one

    def test_theta_quasi_periodicity(self):
        # theta(qz) = -theta(z)/z
        assert shift_ratio(QHypTerm.theta(mono("z")), Z) == rf("-1/z")

    def test_heine_prefactor(self):
        expected = QHypTerm.pochhammer_quotient([mono("b"), mono("a*z")], [mono("c"), mono("z")])
        assert t_h().term == expected
        assert t_ab().term.is_one

    def test_generator_orders(self):
        assert trans_order(t_h()) == 2
        assert trans_order(t_ab()) == 2
        assert trans_order(trans_multiply(t_h(), t_ab())) == 6

    def test_inverse_and_power(self):
        t = trans_multiply(t_h(), t_ab())
        assert trans_multiply(t, trans_inverse(t)).is_identity
        assert trans_power(t, 6).is_identity
        assert trans_power(t, -1) == trans_inverse(t)
        assert trans_power(t, 0) == Transformation.identity()

    def test_g_shift_ratios_exact(self):
        g = g_prefactor()
        stated = g_stated_ratios()
        assert [S for S, _ in stated] == [A, B, C, Z]
        for S, ratio in stated:
            assert shift_ratio(g, S) == ratio, S.to_text()


@pytest.mark.unit
class TestSeries:
    """The exact truncated 2phi1 series."""

    def test_first_coefficients(self):
        assert phi21_coefficient(0).is_one
        assert phi21_coefficient(1) == rf("(1 - a)*(1 - b)/((1 - q)*(1 - c))")
        assert phi21_coefficient(2) == rf(
            "(1 - a)*(1 - a*q)*(1 - b)*(1 - b*q)/((1 - q)*(1 - q**2)*(1 - c)*(1 - c*q))"
        )

    def test_series_length(self):
        assert phi21_series(5).order == 5

    def test_negative_index(self):
        with pytest.raises(PreconditionError):
            phi21_coefficient(-1)


@pytest.mark.unit
class TestDiffOperator:
    """The operator ring and the series action."""

    def test_twisted_multiplication(self):
        # A a = (aq) A
        left = op_multiply(DiffOperator.shift(A), DiffOperator.shift(ONE, RationalFunc.variable("a")))
        assert left == DiffOperator.shift(A, rf("a*q"))

    def test_addition_cancels(self):
        D = DiffOperator({A: rf("1 - a"), ONE: -1})
        assert (D - D).is_zero
        assert DiffOperator.from_pairs([(A, 1), (A, -1), (Z, 2)]) == DiffOperator({Z: 2})

    def test_text(self):
        D = DiffOperator({A: rf("1 - a"), ONE: -1, Z: RationalFunc.variable("a")})
        assert D.to_text() == "(-1 * a + 1) * A + a * Z + -1"

    def test_normalize_operator(self):
        D = DiffOperator({A: rf("(1 - a)/(z*(1 - c))"), ONE: rf("-1/(z*(1 - c))"), Z: rf("a/(z*(1 - c))")})
        expected = DiffOperator({A: rf("1 - a"), ONE: -1, Z: RationalFunc.variable("a")})
        assert normalize_operator(D) == normalize_operator(expected)
        assert operators_proportional(D, expected)
        assert not operators_proportional(D, DiffOperator({A: 1, ONE: -1}))

    def test_left_clear_gives_polynomials(self):
        D = DiffOperator({Z: rf("(1 - c)/(z*(1 - a))"), ONE: rf("1/q")})
        for _, r in left_clear(D).items():
            assert r.is_laurent and r.num.is_polynomial

    def test_z_expansion(self):
        assert z_expansion(rf("1/(1 - z)"), 3) == [RationalFunc.one()] * 4
        with pytest.raises(SeriesError):
            z_expansion(rf("1/z"), 2)

    def test_apply_identity(self):
        S = phi21_series(4)
        assert apply_to_series(DiffOperator.one(), S, 4) == S

    def test_apply_beyond_order(self):
        with pytest.raises(SeriesError):
            apply_to_series(DiffOperator.one(), phi21_series(2), 3)

    def test_swap_conjugates_p_a_to_p_b(self):
        p_a = DiffOperator({A: rf("1 - a"), ONE: -1, Z: RationalFunc.variable("a")})
        p_b = DiffOperator({B: rf("1 - b"), ONE: -1, Z: RationalFunc.variable("b")})
        assert conjugate_op(t_ab(), p_a) == p_b
        assert conjugate_op(Transformation.identity(), p_a) == p_a
