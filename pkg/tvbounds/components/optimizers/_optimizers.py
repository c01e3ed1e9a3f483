import abc
import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from loguru import logger
from scipy import optimize

from ._methods import k1_objective
from ...closed_bounds import corollary_k1_tilde, theta_star
from ...errors import InvalidParameterError

__all__ = [
    'K1Variant',
    'OptimizerConfig',
    'K1SearchResult',
    'BaseK1Search',
    'ClosedFormSearch',
    'ThetaOnlySearch',
    'CommonAlphaSearch',
    'ThreeParamSearch',
    'get_search',
    'optimize_k1',
]

Point = tuple[float, float, float]


class K1Variant(str, enum.Enum):
    """
    Варианты максимизации K₁(λ): по трём параметрам, при α₁ = α₂,
    только по θ при α₁ = α₂ = λ и замкнутая форма K̃₁.
    """
    THREE_PARAM = 'three_param'
    COMMON_ALPHA = 'common_alpha'
    THETA_ONLY = 'theta_only'
    CLOSED_FORM = 'closed_form'


@dataclass(frozen=True)
class OptimizerConfig:
    """
    Бюджет и область поиска.

    Область: α ∈ [λ - box_scale·√λ - box_offset; λ + box_scale·√λ + box_offset],
    α₂ дополнительно ≤ λ + 3/2, θ ∈ [theta_min; theta_scale·θ*(λ) + theta_offset].

    Attributes:
        grid_size: точек сетки по каждой координате (по θ - логарифмическая)
        refine_starts: сколько лучших точек сетки уточнять симплекс-методом
        max_iterations: лимит итераций одного уточнения
        xatol: точность по аргументу для симплекс-метода
        fatol: точность по значению для симплекс-метода
    """
    grid_size: int = 12
    refine_starts: int = 5
    max_iterations: int = 2000
    xatol: float = 1e-10
    fatol: float = 1e-15
    box_scale: float = 10.0
    box_offset: float = 10.0
    theta_min: float = 1e-3
    theta_scale: float = 10.0
    theta_offset: float = 100.0

    def __post_init__(self):
        if self.grid_size < 2:
            raise InvalidParameterError(f"grid_size должен быть ≥ 2, получено {self.grid_size}")
        if self.refine_starts < 0 or self.max_iterations < 1:
            raise InvalidParameterError("Бюджет уточнения должен быть неотрицательным")
        if not 0.0 < self.theta_min:
            raise InvalidParameterError(f"theta_min должен быть > 0, получено {self.theta_min}")

    def alpha_bounds(self, lam: float) -> tuple[float, float]:
        spread = self.box_scale * math.sqrt(lam) + self.box_offset
        return lam - spread, lam + spread

    def alpha2_bounds(self, lam: float) -> tuple[float, float]:
        return self.alpha_bounds(lam)[0], lam + 1.5

    def log_theta_bounds(self, lam: float) -> tuple[float, float]:
        theta_max = self.theta_scale * theta_star(lam) + self.theta_offset
        return math.log(self.theta_min), math.log(theta_max)


@dataclass(frozen=True)
class K1SearchResult:
    """
    Результат максимизации: значение коэффициента и точка (α₁, α₂, θ), где оно достигнуто.
    """
    k1: float
    argmax: Point
    evaluations: int
    variant: K1Variant

    @property
    def vacuous(self) -> bool:
        return self.k1 <= 0.0


class _CountingObjective:
    """
    -K₁-целевая функция в переменных поиска с подсчётом вычислений.
    """

    def __init__(self, lam: float, to_point: Callable[[Sequence[float]], Point]):
        self._lam = lam
        self._to_point = to_point
        self.evaluations = 0

    def value(self, x: Sequence[float]) -> float:
        self.evaluations += 1
        value = k1_objective(self._lam, *self._to_point(x))
        return value if math.isfinite(value) else -math.inf

    def __call__(self, x: Sequence[float]) -> float:
        return -self.value(x)


class BaseK1Search(metaclass=abc.ABCMeta):
    """
    Базовый класс для стратегий вычисления K₁(λ).
    """
    variant: K1Variant

    @abc.abstractmethod
    def search(self, lam: float) -> K1SearchResult:
        """
        Находит (нижнюю оценку) супремума целевой функции при данном λ.
        """

    @staticmethod
    def _check_lambda(lam: float) -> None:
        if not (lam > 0.0 and math.isfinite(lam)):
            raise InvalidParameterError(f"λ должна быть положительной, получено {lam}")

    def _get_result(self, lam: float, argmax: Point, evaluations: int) -> K1SearchResult:
        k1 = k1_objective(lam, *argmax)
        if k1 <= 0.0:
            logger.warning(f"Оценка {self.variant.value} при λ={lam!r} бессодержательна: K₁={k1!r}")
        return K1SearchResult(k1=k1, argmax=argmax, evaluations=evaluations, variant=self.variant)


class ClosedFormSearch(BaseK1Search):
    """
    K̃₁(λ) в замкнутой форме: α₁ = α₂ = λ, θ = θ*(λ).
    """
    variant = K1Variant.CLOSED_FORM

    def search(self, lam: float) -> K1SearchResult:
        self._check_lambda(lam)
        return K1SearchResult(
            k1=corollary_k1_tilde(lam),
            argmax=(lam, lam, theta_star(lam)),
            evaluations=1,
            variant=self.variant,
        )


class ThetaOnlySearch(BaseK1Search):
    """
    Максимизация по одному θ при α₁ = α₂ = λ (без ограничения θ ≥ e - 2/√e).
    """
    variant = K1Variant.THETA_ONLY

    def __init__(self, *, config: Optional[OptimizerConfig] = None):
        self._config = config or OptimizerConfig()

    def search(self, lam: float) -> K1SearchResult:
        self._check_lambda(lam)
        objective = _CountingObjective(lam, lambda x: (lam, lam, math.exp(x[0])))

        seed = math.log(theta_star(lam))
        candidates = [(objective.value([seed]), seed)]

        res = optimize.minimize_scalar(
            lambda t: objective([t]),
            bounds=self._config.log_theta_bounds(lam),
            method='bounded',
            options=dict(xatol=self._config.xatol, maxiter=self._config.max_iterations),
        )
        candidates.append((-float(res.fun), float(res.x)))

        _, best = max(candidates, key=lambda pair: pair[0])
        return self._get_result(lam, (lam, lam, math.exp(best)), objective.evaluations)


class _SimplexSearch(BaseK1Search, metaclass=abc.ABCMeta):
    """
    Общая схема: сетка стартовых точек → уточнение лучших из них и
    затравочных точек симплекс-методом Нелдера-Мида → максимум по всем кандидатам.
    Переменная θ ищется в логарифмическом масштабе.
    """

    def __init__(self, *, config: Optional[OptimizerConfig] = None):
        self._config = config or OptimizerConfig()

    @abc.abstractmethod
    def _get_bounds(self, lam: float) -> list[tuple[float, float]]:
        """Границы области поиска в переменных поиска"""

    @abc.abstractmethod
    def _to_point(self, lam: float, x: Sequence[float]) -> Point:
        """Переводит переменные поиска в (α₁, α₂, θ)"""

    @abc.abstractmethod
    def _get_seeds(self, lam: float) -> list[list[float]]:
        """Затравочные точки (всегда уточняются)"""

    def _get_grid(self, lam: float) -> list[list[float]]:
        axes = [np.linspace(low, high, self._config.grid_size) for low, high in self._get_bounds(lam)]
        mesh = np.meshgrid(*axes, indexing='ij')
        return np.stack([m.ravel() for m in mesh], axis=1).tolist()

    def search(self, lam: float) -> K1SearchResult:
        self._check_lambda(lam)
        objective = _CountingObjective(lam, lambda x: self._to_point(lam, x))
        bounds = self._get_bounds(lam)

        grid = self._get_grid(lam)
        grid_values = np.array([objective.value(x) for x in grid])
        # устойчивая сортировка: при равенстве выигрывает первая найденная точка
        order = np.argsort(-grid_values, kind='stable')[:self._config.refine_starts]

        starts = self._get_seeds(lam) + [grid[i] for i in order]
        candidates = [(objective.value(x), list(x)) for x in starts]

        for x0 in starts:
            res = optimize.minimize(
                objective,
                x0=np.asarray(x0, dtype=np.float64),
                method='Nelder-Mead',
                bounds=bounds,
                options=dict(
                    maxiter=self._config.max_iterations,
                    xatol=self._config.xatol,
                    fatol=self._config.fatol,
                ),
            )
            x = np.clip(res.x, [b[0] for b in bounds], [b[1] for b in bounds]).tolist()
            candidates.append((objective.value(x), x))
            logger.debug(f"{self.variant.value} λ={lam!r}: старт {list(x0)} → {x}, K₁={-res.fun!r}")

        best_value, best = candidates[0]
        for value, x in candidates[1:]:
            if value > best_value:
                best_value, best = value, x

        return self._get_result(lam, self._to_point(lam, best), objective.evaluations)


class CommonAlphaSearch(_SimplexSearch):
    """
    Двухпараметрическая максимизация при α₁ = α₂ = α.
    """
    variant = K1Variant.COMMON_ALPHA

    def _get_bounds(self, lam: float) -> list[tuple[float, float]]:
        return [self._config.alpha2_bounds(lam), self._config.log_theta_bounds(lam)]

    def _to_point(self, lam: float, x: Sequence[float]) -> Point:
        alpha, log_theta = x
        return float(alpha), float(alpha), math.exp(log_theta)

    def _get_seeds(self, lam: float) -> list[list[float]]:
        return [[lam, math.log(theta_star(lam))]]


class ThreeParamSearch(_SimplexSearch):
    """
    Полная максимизация по (α₁, α₂, θ) с ограничением α₂ ≤ λ + 3/2.

    Затравкой служит результат двухпараметрического поиска, поэтому
    K₁(three_param) ≥ K₁(common_alpha) ≥ K̃₁ выполняется по построению.
    """
    variant = K1Variant.THREE_PARAM

    def __init__(
            self,
            *,
            config: Optional[OptimizerConfig] = None,
            common_alpha: Optional[CommonAlphaSearch] = None,
    ):
        super().__init__(config=config)
        self._common_alpha = common_alpha or CommonAlphaSearch(config=self._config)

    def _get_bounds(self, lam: float) -> list[tuple[float, float]]:
        return [
            self._config.alpha_bounds(lam),
            self._config.alpha2_bounds(lam),
            self._config.log_theta_bounds(lam),
        ]

    def _to_point(self, lam: float, x: Sequence[float]) -> Point:
        alpha1, alpha2, log_theta = x
        return float(alpha1), float(alpha2), math.exp(log_theta)

    def _get_seeds(self, lam: float) -> list[list[float]]:
        alpha1, alpha2, theta = self._common_alpha.search(lam).argmax
        return [
            [alpha1, alpha2, math.log(theta)],
            [lam, lam, math.log(theta_star(lam))],
        ]


def get_search(variant, config: Optional[OptimizerConfig] = None) -> BaseK1Search:
    """
    Создаёт стратегию поиска по названию варианта.
    """
    variant = K1Variant(variant)
    if variant is K1Variant.CLOSED_FORM:
        return ClosedFormSearch()
    if variant is K1Variant.THETA_ONLY:
        return ThetaOnlySearch(config=config)
    if variant is K1Variant.COMMON_ALPHA:
        return CommonAlphaSearch(config=config)
    return ThreeParamSearch(config=config)


def optimize_k1(lam: float, variant=K1Variant.THREE_PARAM, config: Optional[OptimizerConfig] = None) -> K1SearchResult:
    """
    Вычисляет K₁(λ) выбранным способом.

    Результат численной максимизации - гарантированная нижняя оценка супремума
    (область поиска ограничена), но не сертификат его достижения.
    """
    return get_search(variant, config).search(lam)
