"""
Numerical tests: q-Pochhammer products, theta functions, 2phi1 and the
pointwise verification of the Heine symmetries.
"""

import mpmath
import pytest
from mpmath import fabs, mpc, mpf, workprec

from src.algebra.exactalg import parse_rational
from src.algebra.paramgroup import A, ShiftOp, heine_matrix
from src.algebra.qterm import Transformation, g_prefactor, t_ab, t_h
from src.classify.group import heine_group
from src.models.schemas import EvalConfig
from src.numerics import (
    EvalPoint,
    PointSampler,
    eval_rational,
    eval_term,
    phi21,
    qbinomial_check,
    qpoch_inf,
    series_consistency,
    theta,
    verify_g_ratios,
    verify_g_ratios_sampled,
    verify_symmetry,
)
from src.numerics.qfunctions import phi21_partial, phi21_tail_bound
from src.numerics.verify import relative_error, sample_admissible
from src.utils.errors import NumericDomainError, VerificationError


@pytest.fixture
def cfg():
    """Default precision with a small sample count."""
    return EvalConfig(samples=6)


@pytest.fixture
def point():
    return EvalPoint.from_values(
        mpc("0.31", "0.12"), mpc("-0.24", "0.4"), mpc("0.55", "-0.2"), mpc("0.3", "0.1"), mpc("0.45", "0.1"),
    )


def close(x, y, cfg: EvalConfig) -> bool:
    return relative_error(x, y) < cfg.tol


@pytest.mark.numeric
class TestQFunctions:
    """Infinite products and theta functions."""

    def test_qpoch_matches_mpmath(self, cfg):
        with workprec(cfg.precision):
            x, q = mpc("0.3", "0.2"), mpc("0.5", "-0.1")
            assert close(qpoch_inf(x, q, cfg), mpmath.qp(x, q), cfg)

    def test_qpoch_trivial_cases(self, cfg):
        assert qpoch_inf(0, mpf("0.5"), cfg) == 1
        assert qpoch_inf(1, mpf("0.5"), cfg) == 0

    def test_qpoch_functional_equation(self, cfg):
        # (x; q)_inf = (1 - x) (xq; q)_inf
        with workprec(cfg.precision):
            x, q = mpc("0.7", "0.3"), mpc("-0.4", "0.2")
            assert close(qpoch_inf(x, q, cfg), (1 - x) * qpoch_inf(x * q, q, cfg), cfg)

    def test_qpoch_diverges(self, cfg):
        with pytest.raises(NumericDomainError):
            qpoch_inf(mpf("0.5"), mpf("1.2"), cfg)

    def test_theta_quasi_periodicity(self, cfg):
        # theta(qx) = -theta(x) / x
        with workprec(cfg.precision):
            x, q = mpc("0.6", "0.5"), mpc("0.3", "0.3")
            assert close(theta(q * x, q, cfg), -theta(x, q, cfg) / x, cfg)
            assert close(theta(q / x, q, cfg), theta(x, q, cfg), cfg)

    def test_theta_at_zero(self, cfg):
        with pytest.raises(NumericDomainError):
            theta(0, mpf("0.5"), cfg)


@pytest.mark.numeric
class TestPhi21:
    """Direct summation of the series."""

    def test_a_equal_one(self, cfg, point):
        p = EvalPoint(mpc(1), point.b, point.c, point.z, point.q)
        assert phi21(p, cfg) == 1

    def test_z_equal_zero(self, cfg, point):
        p = EvalPoint(point.a, point.b, point.c, mpc(0), point.q)
        assert phi21(p, cfg) == 1

    def test_q_binomial(self, cfg, point):
        # 2phi1(q, b; q; q, z) = (bz; q)_inf / (z; q)_inf
        q = point.q
        p = EvalPoint(q, point.b, q, point.z, q)
        expected = qpoch_inf(point.b * point.z, q, cfg) / qpoch_inf(point.z, q, cfg)
        assert close(phi21(p, cfg), expected, cfg)

    def test_matches_mpmath(self, cfg, point):
        with workprec(cfg.precision):
            expected = mpmath.qhyper([point.a, point.b], [point.c], point.q, point.z)
            assert close(phi21(point, cfg), expected, cfg)

    def test_tail_certificate(self, cfg, point):
        value, tail, nterms = phi21_partial(point, cfg)
        assert tail < mpf(cfg.tail_eps) * fabs(value)
        assert nterms > 1

    def test_tail_bound_decreases(self, cfg, point):
        assert phi21_tail_bound(point, 20, cfg) < phi21_tail_bound(point, 5, cfg)

    def test_outside_disk(self, cfg, point):
        p = EvalPoint(point.a, point.b, point.c, mpc("1.1"), point.q)
        with pytest.raises(NumericDomainError):
            phi21(p, cfg)

    def test_pole_in_c(self, cfg, point):
        q = point.q
        p = EvalPoint(point.a, point.b, 1 / q ** 2, point.z, q)
        with pytest.raises(NumericDomainError) as exc:
            phi21(p, cfg, margin=1e-6)
        assert exc.value.factor == "(c; q)_3"

    def test_q_on_unit_circle(self):
        with pytest.raises(NumericDomainError):
            EvalPoint.from_values(0.1, 0.2, 0.3, 0.4, 1)


@pytest.mark.numeric
class TestEvaluation:
    """Rational functions, terms and point maps."""

    def test_eval_rational(self, cfg, point):
        f = parse_rational("(1 - a)/(c*q)")
        assert close(eval_rational(f, point, cfg), (1 - point.a) / (point.c * point.q), cfg)

    def test_eval_rational_pole(self, cfg):
        p = EvalPoint.from_values(1, mpf("0.2"), mpf("0.3"), mpf("0.4"), mpf("0.5"))
        with pytest.raises(NumericDomainError):
            eval_rational(parse_rational("1/(1 - a)"), p, cfg)

    def test_eval_heine_prefactor(self, cfg, point):
        expected = (
            qpoch_inf(point.b, point.q, cfg) * qpoch_inf(point.a * point.z, point.q, cfg)
            / (qpoch_inf(point.c, point.q, cfg) * qpoch_inf(point.z, point.q, cfg))
        )
        assert close(eval_term(t_h().term, point, cfg), expected, cfg)

    def test_eval_term_pole_names_factor(self, cfg, point):
        p = EvalPoint(point.a, point.b, point.c, point.z, point.q)
        at_pole = EvalPoint(p.a, p.b, 1 / p.q, p.z, p.q)
        with pytest.raises(NumericDomainError) as exc:
            eval_term(t_h().term, at_pole, cfg, margin=1e-6)
        assert "c" in exc.value.factor

    def test_transformed_point(self, cfg, point):
        moved = point.transformed(heine_matrix())
        assert close(moved.a, point.c / point.b, cfg)
        assert moved.b == point.z
        assert close(moved.c, point.a * point.z, cfg)
        assert moved.z == point.b

    def test_shifted_point(self, cfg, point):
        moved = point.shifted(A * ShiftOp.of(0, 0, 0, -1))
        assert close(moved.a, point.a * point.q, cfg)
        assert close(moved.z, point.z / point.q, cfg)
        assert moved.c == point.c


@pytest.mark.numeric
class TestSampler:
    """Seeded point sampling."""

    def test_deterministic(self, cfg):
        first = PointSampler(cfg, 7).sample()
        second = PointSampler(cfg, 7).sample()
        assert first == second

    def test_distribution(self, cfg):
        sampler = PointSampler(cfg)
        for _ in range(50):
            p = sampler.sample()
            assert cfg.pole_margin - 1e-12 <= fabs(p.a) <= cfg.param_radius + 1e-12
            assert fabs(p.z) <= cfg.z_radius + 1e-12
            assert cfg.q_radius_min - 1e-12 <= fabs(p.q) <= cfg.q_radius_max + 1e-12
        assert sampler.drawn == 50

    def test_resample_cap(self, cfg):
        def always_reject(p):
            raise NumericDomainError("rejected")

        with pytest.raises(VerificationError):
            sample_admissible("reject", always_reject, 3, cfg.model_copy(update={"max_resample": 5}))


@pytest.mark.numeric
class TestSymmetryVerification:
    """2phi1(p) = f(p) 2phi1(L^-1 p) for the group elements."""

    def test_heine(self, cfg):
        report = verify_symmetry(t_h(), 10, cfg)
        assert report.passed, report.max_rel_error
        assert report.word == "t_h"

    def test_swap(self, cfg):
        assert verify_symmetry(t_ab(), 5, cfg).passed

    @pytest.mark.slow
    def test_whole_group(self, cfg):
        for t in heine_group():
            report = verify_symmetry(t, 20, cfg)
            assert report.passed, (t.word, report.max_rel_error)

    def test_wrong_prefactor_fails(self, cfg):
        broken = Transformation(t_h().term * t_h().term, heine_matrix(), "broken")
        assert not verify_symmetry(broken, 5, cfg).passed

    def test_deterministic_under_seed(self, cfg):
        r1 = verify_symmetry(t_h(), 4, cfg)
        r2 = verify_symmetry(t_h(), 4, cfg)
        assert r1.max_rel_error == r2.max_rel_error


@pytest.mark.numeric
class TestIdentities:
    """The q-binomial oracle, the series oracle and the prefactor g."""

    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_qbinomial(self, cfg, j):
        check = qbinomial_check(j, 10, cfg)
        assert check.passed, check.max_rel_error

    def test_series_consistency(self, cfg):
        assert series_consistency(12, 4, cfg).passed

    def test_g_ratios_at_point(self, cfg, point):
        report = verify_g_ratios(point, cfg)
        assert len(report.checks) == 4
        assert report.all_passed

    def test_g_ratios_sampled(self, cfg):
        assert verify_g_ratios_sampled(20, cfg).all_passed

    def test_g_is_evaluable(self, cfg, point):
        assert eval_term(g_prefactor(), point, cfg) != 0
