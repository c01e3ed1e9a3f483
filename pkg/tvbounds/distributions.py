"""
Точные распределения: сумма независимых бернуллиевских величин (пуассон-биномиальное),
распределение Пуассона и расстояние полной вариации между ними.
"""
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from loguru import logger
from scipy import special, stats

from .errors import InvalidInstanceError, InvalidParameterError, InstanceTooLargeError
from .math_utils import get_stable_sum

__all__ = [
    'DEFAULT_EXACT_MAX_N',
    'ProbVector',
    'DistTable',
    'poisson_binomial_pmf',
    'poisson_pmf',
    'total_variation',
    'exact_tv_poisson_approx',
]

DEFAULT_EXACT_MAX_N = 5000


@dataclass(frozen=True)
class ProbVector:
    """
    Набор вероятностей успеха p₁..pₙ независимых бернуллиевских величин.

    Attributes:
        probs: вероятности, каждая из [0, 1]
        lam: λ = Σ pᵢ
        sum_p2: Σ pᵢ²
    """
    probs: tuple[float, ...]
    lam: float = field(init=False)
    sum_p2: float = field(init=False)

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        for i, p in enumerate(probs):
            if not (0.0 <= p <= 1.0):
                raise InvalidInstanceError(f"Вероятность p[{i}] = {p} вне отрезка [0, 1]")

        object.__setattr__(self, 'probs', probs)
        object.__setattr__(self, 'lam', get_stable_sum(probs))
        object.__setattr__(self, 'sum_p2', get_stable_sum(p * p for p in probs))

    @classmethod
    def from_iterable(cls, probs: Iterable[float]) -> 'ProbVector':
        return cls(tuple(probs))

    @classmethod
    def from_lambda(cls, lam: float, n: int) -> 'ProbVector':
        """
        n одинаковых вероятностей λ/n (биномиальный случай).
        """
        if n < 1:
            raise InvalidInstanceError(f"Число слагаемых должно быть натуральным, получено {n}")
        if not (0.0 <= lam <= n):
            raise InvalidInstanceError(f"λ = {lam} недостижима при n = {n}")
        return cls((lam / n,) * n)

    @property
    def n(self) -> int:
        return len(self.probs)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=np.float64)

    def without(self, index: int) -> 'ProbVector':
        """
        Набор без index-го слагаемого (для Vⱼ = W - Xⱼ).
        """
        return ProbVector(self.probs[:index] + self.probs[index + 1:])


@dataclass(frozen=True, eq=False)
class DistTable:
    """
    Распределение на {0, ..., K} с оценкой сверху на массу за пределами K.
    """
    pmf: np.ndarray
    tail_mass_bound: float = 0.0

    def __post_init__(self):
        pmf = np.array(self.pmf, dtype=np.float64)
        if pmf.ndim != 1 or pmf.size == 0:
            raise InvalidInstanceError("Таблица вероятностей должна быть непустым вектором")
        if np.any(pmf < 0.0) or not np.all(np.isfinite(pmf)):
            raise InvalidInstanceError("Вероятности в таблице должны быть неотрицательными")
        if self.tail_mass_bound < 0.0:
            raise InvalidInstanceError("Оценка массы хвоста должна быть неотрицательной")
        pmf.setflags(write=False)
        object.__setattr__(self, 'pmf', pmf)

    @property
    def support_max(self) -> int:
        return self.pmf.size - 1

    def padded(self, support_max: int) -> np.ndarray:
        """
        pmf, дополненная нулями до носителя {0, ..., support_max}.
        """
        if support_max < self.support_max:
            raise InvalidParameterError("Нельзя обрезать таблицу при выравнивании носителей")
        return np.pad(self.pmf, (0, support_max - self.support_max))


def poisson_binomial_pmf(p: ProbVector) -> DistTable:
    """
    Точное распределение W = ΣXᵢ последовательными свёртками
    (после i-го шага таблица живёт на {0, ..., i}).
    """
    pmf = np.zeros(p.n + 1, dtype=np.float64)
    pmf[0] = 1.0
    for i, prob in enumerate(p.probs):
        shifted = pmf[:i + 1] * prob
        pmf[:i + 1] *= 1.0 - prob
        pmf[1:i + 2] += shifted
    return DistTable(pmf=pmf, tail_mass_bound=0.0)


def poisson_pmf(lam: float, support_max: int) -> DistTable:
    """
    Распределение Пуассона Po(λ), обрезанное до {0, ..., support_max}.

    Вероятности считаются в логарифмах: exp(k·ln λ - λ - ln Γ(k+1)),
    масса хвоста - через функцию выживания.
    """
    if not lam >= 0.0:
        raise InvalidParameterError(f"Параметр Пуассона должен быть неотрицательным, получено {lam}")
    if support_max < 0:
        raise InvalidParameterError(f"Носитель должен быть неотрицательным, получено {support_max}")

    if lam == 0.0:
        pmf = np.zeros(support_max + 1, dtype=np.float64)
        pmf[0] = 1.0
        return DistTable(pmf=pmf, tail_mass_bound=0.0)

    k = np.arange(support_max + 1, dtype=np.float64)
    pmf = np.exp(k * math.log(lam) - lam - special.gammaln(k + 1.0))
    tail = max(float(stats.poisson.sf(support_max, lam)), 0.0)
    return DistTable(pmf=pmf, tail_mass_bound=tail)


def total_variation(P: DistTable, Q: DistTable) -> float:
    """
    Расстояние полной вариации ½·Σ|P(k) - Q(k)| с учётом хвостов.

    Если у одной из таблиц хвост нулевой, результат точный;
    иначе вклад хвостов оценивается сверху их суммой.
    """
    support_max = max(P.support_max, Q.support_max)
    diff = np.abs(P.padded(support_max) - Q.padded(support_max))
    distance = 0.5 * (get_stable_sum(diff) + P.tail_mass_bound + Q.tail_mass_bound)
    return min(max(distance, 0.0), 1.0)


def exact_tv_poisson_approx(p: ProbVector, *, max_n: int = DEFAULT_EXACT_MAX_N) -> float:
    """
    Точное d_TV(P_W, Po(λ)).

    P_W сосредоточено на {0, ..., n}, поэтому
    d_TV = ½(Σ_{k ≤ n} |P_W(k) - Po_λ(k)| + Pr[Z > n]).
    """
    if p.n > max_n:
        raise InstanceTooLargeError(
            f"n = {p.n} больше лимита точного вычисления ({max_n})")

    logger.debug(f"Точный расчёт d_TV: n={p.n} λ={p.lam!r}")
    return total_variation(poisson_binomial_pmf(p), poisson_pmf(p.lam, p.n))
