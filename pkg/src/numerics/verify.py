"""
Pointwise numerical verification of symmetries and identities.

Points that leave a convergence domain, or come within ``pole_margin`` of a
pole, are discarded and redrawn; the number of redraws is reported and capped
by ``max_resample``.
"""

from typing import Callable, Dict, List, Optional, Tuple, TypeVar

from mpmath import fabs, mpc, mpf, workprec

from src.algebra.paramgroup import ShiftOp
from src.algebra.qterm import Transformation, g_prefactor, g_stated_ratios, shift_ratio
from src.algebra.series import phi21_series
from src.models.schemas import EvalConfig, IdentityCheck, RatioCheck, RatioReport, SymmetryReport
from src.numerics.qfunctions import (
    EvalPoint,
    eval_rational,
    eval_term,
    phi21,
    phi21_tail_bound,
    qpoch_inf,
)
from src.numerics.sampling import PointSampler
from src.utils.errors import NumericDomainError, VerificationError
from src.utils.logger import get_logger


logger = get_logger("numerics.verify")

T = TypeVar("T")


def relative_error(lhs, rhs) -> mpf:
    scale = fabs(lhs)
    return fabs(lhs - rhs) / scale if scale else fabs(rhs)


def sample_admissible(
    name: str,
    evaluate: Callable[[EvalPoint], T],
    samples: int,
    cfg: EvalConfig,
    sampler: Optional[PointSampler] = None,
) -> Tuple[List[T], int]:
    """
    Evaluate at ``samples`` admissible points; return (results, redraws).

    A point is admissible when ``evaluate`` does not raise NumericDomainError.

    Raises:
        VerificationError: more than ``max_resample`` points were rejected
    """
    sampler = sampler or PointSampler(cfg)
    results: List[T] = []
    resamples = 0
    while len(results) < samples:
        p = sampler.sample()
        try:
            results.append(evaluate(p))
        except NumericDomainError as e:
            resamples += 1
            if resamples > cfg.max_resample:
                raise VerificationError(
                    f"{name}: too many sample points rejected",
                    details={"accepted": len(results), "rejected": resamples, "last_reason": e.message},
                ) from e
    return results, resamples


def verify_symmetry(
    t: Transformation,
    samples: int,
    cfg: EvalConfig,
    sampler: Optional[PointSampler] = None,
) -> SymmetryReport:
    """
    Check 2phi1(p) = f(p) 2phi1(L^-1 p) at random points for t = f L.

    The transformed point must have |z'| < max_arg_modulus; continuation
    beyond the disk is not attempted.
    """
    inv = t.mat.inverse
    margin = cfg.pole_margin

    def evaluate(p: EvalPoint) -> mpf:
        moved = p.transformed(inv)
        if fabs(moved.z) >= cfg.max_arg_modulus:
            raise NumericDomainError("transformed argument too close to the unit circle", factor="z")
        lhs = phi21(p, cfg, margin)
        rhs = eval_term(t.term, p, cfg, margin) * phi21(moved, cfg, margin)
        return relative_error(lhs, rhs)

    with workprec(cfg.precision):
        errors, resamples = sample_admissible(t.word or "identity", evaluate, samples, cfg, sampler)
        worst = float(max(errors, default=mpf(0)))

    logger.debug("symmetry verified", word=t.word, max_rel_error=worst, resamples=resamples)
    return SymmetryReport(word=t.word, samples=samples, max_rel_error=worst, tol=cfg.tol, resamples=resamples)


def _g_ratio_errors(p: EvalPoint, cfg: EvalConfig) -> Dict[ShiftOp, mpf]:
    g = g_prefactor()
    margin = cfg.pole_margin
    base = eval_term(g, p, cfg, margin)
    errors = {}
    for S, stated in g_stated_ratios():
        shifted = eval_term(g, p.shifted(S), cfg, margin)
        errors[S] = relative_error(shifted / base, eval_rational(stated, p, cfg))
    return errors


def _ratio_report(errors: Dict[ShiftOp, float], cfg: EvalConfig) -> RatioReport:
    g = g_prefactor()
    checks = [
        RatioCheck(
            shift=S.to_list(),
            expected=stated.to_text(),
            exact_match=shift_ratio(g, S) == stated,
            max_rel_error=errors[S],
        )
        for S, stated in g_stated_ratios()
    ]
    return RatioReport(checks=checks, tol=cfg.tol)


def verify_g_ratios(p: EvalPoint, cfg: EvalConfig) -> RatioReport:
    """
    Ag/g, Bg/g, Cg/g and Zg/g at p against their stated values, plus the
    exact comparison of shift_ratio(g, S) with the same values.

    Raises:
        NumericDomainError: p is within ``pole_margin`` of a pole of g
    """
    with workprec(cfg.precision):
        errors = {S: float(e) for S, e in _g_ratio_errors(p, cfg).items()}
    return _ratio_report(errors, cfg)


def verify_g_ratios_sampled(samples: int, cfg: EvalConfig, sampler: Optional[PointSampler] = None) -> RatioReport:
    """verify_g_ratios over ``samples`` random points, keeping the worst error per shift."""
    with workprec(cfg.precision):
        results, _ = sample_admissible("g ratios", lambda p: _g_ratio_errors(p, cfg), samples, cfg, sampler)
        worst = {
            S: float(max((r[S] for r in results), default=mpf(0)))
            for S, _ in g_stated_ratios()
        }
    return _ratio_report(worst, cfg)


def qbinomial_check(j: int, samples: int, cfg: EvalConfig) -> IdentityCheck:
    """2phi1(q^j, b; q^j; q, z) = (zb; q)_inf / (z; q)_inf at random b, z, q."""
    margin = cfg.pole_margin

    def evaluate(p: EvalPoint) -> mpf:
        qj = p.q ** j
        lhs = phi21(EvalPoint(qj, p.b, qj, p.z, p.q), cfg, margin)
        rhs = qpoch_inf(p.z * p.b, p.q, cfg) / qpoch_inf(p.z, p.q, cfg)
        return relative_error(lhs, rhs)

    with workprec(cfg.precision):
        errors, _ = sample_admissible(f"q-binomial j={j}", evaluate, samples, cfg, PointSampler(cfg, cfg.seed + j))
        worst = float(max(errors, default=mpf(0)))
    return IdentityCheck(
        name=f"q-binomial j={j}", samples=samples, max_rel_error=worst, tol=cfg.tol, passed=worst < cfg.tol,
    )


def series_consistency(K: int, samples: int, cfg: EvalConfig) -> IdentityCheck:
    """
    The exact coefficients c_0..c_K, evaluated and summed, against phi21.

    At every point the difference must stay within the tail bound of the
    terms beyond z^K, plus tol times |phi21|. ``max_rel_error`` reports the
    worst |phi21 - partial sum| / |phi21|.
    """
    series = phi21_series(K)
    margin = cfg.pole_margin

    def evaluate(p: EvalPoint) -> Tuple[mpf, bool]:
        full = phi21(p, cfg, margin)
        partial = sum((eval_rational(series[n], p, cfg) * p.z ** n for n in range(K + 1)), mpc(0))
        gap = fabs(full - partial)
        within = gap <= phi21_tail_bound(p, K, cfg) + mpf(cfg.tol) * fabs(full)
        return gap / fabs(full), within

    with workprec(cfg.precision):
        results, _ = sample_admissible(f"series consistency K={K}", evaluate, samples, cfg)
        worst = float(max((r[0] for r in results), default=mpf(0)))
    return IdentityCheck(
        name=f"series consistency K={K}",
        samples=samples,
        max_rel_error=worst,
        tol=cfg.tol,
        passed=all(r[1] for r in results),
    )
