"""
Сборка BoundReport: все оценки для одного набора вероятностей.
"""
from typing import Optional

from loguru import logger

from .closed_bounds import (
    BoundReport,
    asymptotic_tv,
    barbour_hall_lower,
    barbour_hall_lower_coefficient,
    barbour_hall_upper,
    corollary_k1_tilde,
    le_cam_upper,
    theta_star,
)
from .components.optimizers import BaseK1Search
from .distributions import DEFAULT_EXACT_MAX_N, ProbVector, exact_tv_poisson_approx

__all__ = [
    'build_bound_report',
]


def build_bound_report(
        p: ProbVector,
        *,
        three_param: Optional[BaseK1Search] = None,
        common_alpha: Optional[BaseK1Search] = None,
        exact_max_n: int = DEFAULT_EXACT_MAX_N,
) -> BoundReport:
    """
    Считает все оценки для набора p.

    Args:
        three_param: стратегия для K₁ (None - не считать)
        common_alpha: стратегия для K₁ при α₁ = α₂ (None - не считать)
        exact_max_n: при n больше этого точное d_TV не считается

    При λ = 0 (все pᵢ = 0) все оценки нулевые, θ* не определено.
    """
    lam, sum_p2 = p.lam, p.sum_p2
    logger.info(f"Расчёт оценок: n={p.n} λ={lam!r} Σp²={sum_p2!r}")

    if lam > 0.0:
        theta = theta_star(lam)
        corollary_coeff = corollary_k1_tilde(lam)
        asymptotic = asymptotic_tv(lam, sum_p2)
    else:
        theta, corollary_coeff, asymptotic = None, 0.0, 0.0

    k1_lower = k1_common = None
    vacuous_flags = {
        'bh_lower': barbour_hall_lower_coefficient(lam) <= 0.0,
        'corollary_lower': lam > 0.0 and corollary_coeff <= 0.0,
    }
    if lam > 0.0 and common_alpha is not None:
        result = common_alpha.search(lam)
        k1_common = result.k1 * sum_p2
        vacuous_flags['k1_common_alpha_lower'] = result.vacuous
    if lam > 0.0 and three_param is not None:
        result = three_param.search(lam)
        k1_lower = result.k1 * sum_p2
        vacuous_flags['k1_lower'] = result.vacuous

    exact_tv = None
    if p.n <= exact_max_n:
        exact_tv = exact_tv_poisson_approx(p, max_n=exact_max_n)
    else:
        logger.warning(f"n = {p.n} больше лимита {exact_max_n}: точное d_TV не считается")

    report = BoundReport(
        n=p.n,
        lam=lam,
        sum_p2=sum_p2,
        le_cam=le_cam_upper(p),
        bh_upper=barbour_hall_upper(lam, sum_p2),
        bh_lower=barbour_hall_lower(lam, sum_p2),
        corollary_lower=corollary_coeff * sum_p2,
        theta_star=theta,
        asymptotic_tv=asymptotic,
        k1_lower=k1_lower,
        k1_common_alpha_lower=k1_common,
        exact_tv=exact_tv,
        vacuous_flags=vacuous_flags,
    )

    if not report.is_consistent():
        logger.error(f"Оценки не согласованы между собой: {report}")
    return report
