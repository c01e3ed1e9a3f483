"""
Составные части метода Чена-Стейна в виде численно проверяемых утверждений:
пробная функция f, тождество Стейна для Пуассона, тождество переноса для W
и нижняя оценка d_TV через отношение (числитель / 2·sup).
"""
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .components.optimizers import g_lambda, h_lambda
from .distributions import ProbVector, poisson_binomial_pmf, poisson_pmf
from .errors import DegenerateParamsError, InstanceTooLargeError, InvalidParameterError
from .math_utils import get_stable_sum

__all__ = [
    'STEIN_MAX_N',
    'SteinParams',
    'f_eval',
    'stein_operator',
    'default_truncation',
    'stein_identity_residual',
    'stein_transfer_both_sides',
    'chen_stein_quotient',
    'analytic_quotient_bound',
]

STEIN_MAX_N = 20

# запас по k за точкой, где гауссов множитель становится меньше eps
_TRUNCATION_MARGIN = 50


@dataclass(frozen=True)
class SteinParams:
    """
    Параметры пробной функции f(k) = (k - α₁)·exp(-(k - α₂)²/(θλ)).
    """
    alpha1: float
    alpha2: float
    theta: float
    lam: float

    def __post_init__(self):
        # при θ ≤ 0 функция f неограничена
        if not self.theta > 0.0:
            raise InvalidParameterError(f"θ должна быть положительной, получено {self.theta}")
        if not self.lam > 0.0:
            raise InvalidParameterError(f"λ должна быть положительной, получено {self.lam}")

    @classmethod
    def centered(cls, lam: float, theta: float) -> 'SteinParams':
        return cls(alpha1=lam, alpha2=lam, theta=theta, lam=lam)


def f_eval(params: SteinParams, k):
    """
    f(k) = (k - α₁)·exp(-(k - α₂)²/(θλ)). Принимает число или numpy-массив.
    """
    k = np.asarray(k, dtype=np.float64)
    value = (k - params.alpha1) * np.exp(-(k - params.alpha2) ** 2 / (params.theta * params.lam))
    return float(value) if value.ndim == 0 else value


def stein_operator(params: SteinParams, k, *, lam: Optional[float] = None, func: Optional[Callable] = None):
    """
    λ·f(k+1) - k·f(k).

    Args:
        lam: λ оператора (по умолчанию params.lam)
        func: другая пробная функция вместо f
    """
    func = func or (lambda x: f_eval(params, x))
    lam = params.lam if lam is None else lam
    k = np.asarray(k, dtype=np.float64)
    return lam * np.asarray(func(k + 1.0)) - k * np.asarray(func(k))


def default_truncation(params: SteinParams, eps: float = 1e-12) -> int:
    """
    Граница просмотра k: за ней и гауссов множитель f,
    и хвост Po(λ) меньше eps.
    """
    log_eps = math.log(1.0 / eps)
    gaussian_cut = max(params.alpha2, 0.0) + math.sqrt(params.theta * params.lam * log_eps)
    poisson_cut = params.lam + math.sqrt(params.lam * log_eps) * 2.0 + log_eps
    return int(math.ceil(max(gaussian_cut, poisson_cut))) + _TRUNCATION_MARGIN


def stein_identity_residual(
        params: SteinParams,
        trunc_k: Optional[int] = None,
        *,
        func: Optional[Callable] = None,
) -> float:
    """
    |E[λf(Z+1) - Zf(Z)]| для Z ~ Po(λ), суммой по k ≤ trunc_k.
    Для ограниченной f тождество Стейна даёт 0.
    """
    trunc_k = default_truncation(params) if trunc_k is None else trunc_k
    k = np.arange(trunc_k + 1, dtype=np.float64)
    pmf = poisson_pmf(params.lam, trunc_k).pmf
    return abs(get_stable_sum(pmf * stein_operator(params, k, func=func)))


def _check_brute_force_size(p: ProbVector, max_n: int) -> None:
    if p.n > max_n:
        raise InstanceTooLargeError(f"n = {p.n} больше лимита переборной проверки ({max_n})")


def _leave_one_out_numerator(p: ProbVector, params: SteinParams) -> float:
    """
    Σⱼ pⱼ²·E[f(Vⱼ+2) - f(Vⱼ+1)], где Vⱼ = W - Xⱼ.

    Распределение каждого Vⱼ пересчитывается заново (без обратной свёртки).
    """
    terms = []
    for j, prob in enumerate(p.probs):
        pmf = poisson_binomial_pmf(p.without(j)).pmf
        k = np.arange(pmf.size, dtype=np.float64)
        increments = np.asarray(f_eval(params, k + 2.0)) - np.asarray(f_eval(params, k + 1.0))
        terms.append(prob * prob * get_stable_sum(pmf * increments))
    return get_stable_sum(terms)


def stein_transfer_both_sides(
        p: ProbVector,
        params: SteinParams,
        *,
        max_n: int = STEIN_MAX_N,
) -> tuple[float, float]:
    """
    Обе части тождества переноса
    E[λf(W+1) - Wf(W)] = Σⱼ pⱼ²·E[f(Vⱼ+2) - f(Vⱼ+1)]
    (λ оператора - среднее W, а не params.lam).

    Returns:
        (левая часть, правая часть)
    """
    _check_brute_force_size(p, max_n)
    if p.n == 0:
        return 0.0, 0.0

    pmf = poisson_binomial_pmf(p).pmf
    k = np.arange(pmf.size, dtype=np.float64)
    lhs = get_stable_sum(pmf * stein_operator(params, k, lam=p.lam))
    return lhs, _leave_one_out_numerator(p, params)


def chen_stein_quotient(
        p: ProbVector,
        params: SteinParams,
        trunc_k: Optional[int] = None,
        *,
        max_n: int = STEIN_MAX_N,
) -> float:
    """
    Σⱼ pⱼ²·E[f(Vⱼ+2) - f(Vⱼ+1)] / (2·sup_k |λf(k+1) - kf(k)|) -
    вычислимая правая часть исходной нижней оценки d_TV.
    Точный супремум ищется перебором k ≤ trunc_k.
    """
    _check_brute_force_size(p, max_n)
    trunc_k = default_truncation(params) if trunc_k is None else trunc_k

    k = np.arange(trunc_k + 1, dtype=np.float64)
    sup = float(np.max(np.abs(stein_operator(params, k, lam=p.lam))))
    if sup == 0.0:
        raise DegenerateParamsError(f"sup |λf(k+1) - kf(k)| = 0 при {params}")

    return _leave_one_out_numerator(p, params) / (2.0 * sup)


def analytic_quotient_bound(params: SteinParams) -> float:
    """
    (1 - h_λ)/(2g_λ) - замкнутая оценка снизу для chen_stein_quotient / Σpⱼ²
    (при α₂ ≤ λ + 3/2 и неотрицательном числителе).
    """
    args = (params.lam, params.alpha1, params.alpha2, params.theta)
    return (1.0 - h_lambda(*args)) / (2.0 * g_lambda(*args))
