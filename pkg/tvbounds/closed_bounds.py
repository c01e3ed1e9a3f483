"""
Оценки в замкнутой форме для d_TV(P_W, Po(λ)):
неравенство Ле Кама, оценки Барбура-Холла, улучшенная нижняя оценка K̃₁(λ)
с оптимальным θ и асимптотика Девёльса-Пфайфера.

Все оценки имеют вид (коэффициент) · Σpᵢ².
"""
import math
from dataclasses import asdict, dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

from .distributions import ProbVector
from .errors import InvalidParameterError

__all__ = [
    'SMALL_LAMBDA',
    'BoundReport',
    'le_cam_upper',
    'barbour_hall_upper_coefficient',
    'barbour_hall_upper',
    'barbour_hall_lower_coefficient',
    'barbour_hall_lower',
    'theta_star',
    'corollary_coefficient',
    'corollary_k1_tilde',
    'barbour_hall_theta',
    'bound_ratio',
    'asymptotic_tv',
    'limit_ratio_infinity',
    'limit_ratio_zero',
    'limit_theta_infinity',
    'reference_constants',
]

# ниже этого λ коэффициенты берутся по непрерывности
SMALL_LAMBDA = 1e-12

_E = math.e
_EXP_M12 = math.exp(-0.5)
_EXP_M32 = math.exp(-1.5)
_SQRT_2PIE = math.sqrt(2.0 * math.pi * math.e)

_REFERENCE_CONSTANTS = MappingProxyType({
    'ratio_inf': 10.539,
    'ratio_zero': 20.601,
    'improvement_inf': 3.037,
    'improvement_zero': 1.553,
    'bh_ratio': 32.0,
    'claimed_const': 1.0 / 14.0,
    'dp_ratio': 4.133,
    'asymptotic_gap': 2.55,
    'lambda_theta_zero': 14.0,
})


@dataclass(frozen=True)
class BoundReport:
    """
    Все оценки для одного набора вероятностей.

    Attributes:
        lam: λ = Σpᵢ
        sum_p2: Σpᵢ²
        le_cam: оценка Ле Кама (сверху)
        bh_upper: оценка Барбура-Холла сверху
        bh_lower: оценка Барбура-Холла снизу (1/32)
        corollary_lower: K̃₁(λ)·Σpᵢ²
        theta_star: оптимальное θ для K̃₁ (None при λ = 0)
        k1_lower: K₁(λ)·Σpᵢ² (трёхпараметрическая оптимизация)
        k1_common_alpha_lower: то же при α₁ = α₂
        asymptotic_tv: асимптотика Девёльса-Пфайфера
        vacuous_flags: для каждой нижней оценки - True, если коэффициент ≤ 0
        exact_tv: точное d_TV (None, если n больше лимита)
    """
    n: int
    lam: float
    sum_p2: float
    le_cam: float
    bh_upper: float
    bh_lower: float
    corollary_lower: float
    theta_star: Optional[float]
    asymptotic_tv: float
    k1_lower: Optional[float] = None
    k1_common_alpha_lower: Optional[float] = None
    exact_tv: Optional[float] = None
    vacuous_flags: Mapping[str, bool] = field(default_factory=dict)

    def lower_bounds(self) -> dict[str, float]:
        """
        Все посчитанные нижние оценки, от самой слабой к самой сильной.
        """
        bounds = {
            'bh_lower': self.bh_lower,
            'corollary_lower': self.corollary_lower,
            'k1_common_alpha_lower': self.k1_common_alpha_lower,
            'k1_lower': self.k1_lower,
        }
        return {name: value for name, value in bounds.items() if value is not None}

    def is_consistent(self, tol: float = 1e-9) -> bool:
        """
        Проверяет цепочку нижних оценок, их согласованность с верхними
        и (если известно) с точным значением.
        """
        lowers = list(self.lower_bounds().values())
        for weaker, stronger in zip(lowers, lowers[1:]):
            if weaker > stronger + tol * max(1.0, self.sum_p2):
                return False

        if any(value > self.bh_upper + tol for value in lowers):
            return False
        if self.lam > 0.0 and self.bh_upper > self.le_cam + tol:
            return False

        if self.exact_tv is not None:
            if any(value > self.exact_tv + 1e-12 for value in lowers):
                return False
            if self.exact_tv > self.bh_upper + 1e-12:
                return False
        return True

    def to_dict(self) -> dict:
        """
        Словарь для вывода: поле lam записывается под ключом 'lambda', как в строках sweep.
        """
        data = {('lambda' if key == 'lam' else key): value for key, value in asdict(self).items()}
        data['vacuous_flags'] = dict(self.vacuous_flags)
        return data

    @classmethod
    def from_dict(cls, data: Mapping) -> 'BoundReport':
        data = dict(data)
        if 'lambda' in data:
            data['lam'] = data.pop('lambda')
        data['vacuous_flags'] = dict(data.get('vacuous_flags') or {})
        return cls(**data)


def _check_lambda(lam: float, *, strict: bool) -> None:
    if strict and not lam > 0.0:
        raise InvalidParameterError(f"λ должна быть положительной, получено {lam}")
    if not lam >= 0.0:
        raise InvalidParameterError(f"λ должна быть неотрицательной, получено {lam}")


def _check_sum_p2(sum_p2: float) -> None:
    if not sum_p2 >= 0.0:
        raise InvalidParameterError(f"Σpᵢ² должна быть неотрицательной, получено {sum_p2}")


def le_cam_upper(p: ProbVector) -> float:
    """
    Неравенство Ле Кама: d_TV ≤ Σpᵢ².
    """
    return p.sum_p2


def barbour_hall_upper_coefficient(lam: float) -> float:
    """
    (1 - e^(-λ))/λ, при λ → 0 продолжается единицей.
    """
    _check_lambda(lam, strict=False)
    if lam < SMALL_LAMBDA:
        return 1.0
    return -math.expm1(-lam) / lam


def barbour_hall_upper(lam: float, sum_p2: float) -> float:
    """
    Верхняя оценка Барбура-Холла: ((1 - e^(-λ))/λ)·Σpᵢ².
    """
    _check_sum_p2(sum_p2)
    return barbour_hall_upper_coefficient(lam) * sum_p2


def barbour_hall_lower_coefficient(lam: float) -> float:
    """
    (1/32)·min{1, 1/λ}.
    """
    _check_lambda(lam, strict=False)
    return min(1.0, 1.0 / lam) / 32.0 if lam > 0.0 else 1.0 / 32.0


def barbour_hall_lower(lam: float, sum_p2: float) -> float:
    """
    Нижняя оценка Барбура-Холла: (1/32)·min{1, 1/λ}·Σpᵢ².
    """
    _check_sum_p2(sum_p2)
    return barbour_hall_lower_coefficient(lam) * sum_p2


def _theta_root(lam: float) -> float:
    return math.sqrt((3.0 * lam + 7.0) * ((3.0 + 2.0 * _EXP_M12) * lam + 7.0))


def theta_star(lam: float) -> float:
    """
    Оптимальное θ при α₁ = α₂ = λ:
    θ* = 3 + 7/λ + (1/λ)·sqrt((3λ+7)[(3+2e^(-1/2))λ+7]).

    Всегда больше 3 (а значит и e - 2/√e), так что g_λ(λ, λ, θ*) = λ(2e^(-3/2) + θ*/e).
    """
    _check_lambda(lam, strict=True)
    return 3.0 + (7.0 + _theta_root(lam)) / lam


def corollary_coefficient(lam: float, theta: float) -> float:
    """
    Коэффициент нижней оценки при α₁ = α₂ = λ и произвольном θ > 0:
    (1 - (3λ+7)/(θλ)) / (2λ·max{1, 2e^(-3/2) + θ/e}).
    """
    _check_lambda(lam, strict=True)
    if not theta > 0.0:
        raise InvalidParameterError(f"θ должна быть положительной, получено {theta}")
    h = (3.0 * lam + 7.0) / (theta * lam)
    g = lam * max(1.0, 2.0 * _EXP_M32 + theta / _E)
    return (1.0 - h) / (2.0 * g)


def corollary_k1_tilde(lam: float) -> float:
    """
    K̃₁(λ) = (e/(2λ))·(1 - (3 + 7/λ)/θ*) / (θ* + 2e^(-1/2)).

    Числитель 1 - (3 + 7/λ)/θ* переписан как root/(λθ*),
    чтобы при малых λ не вычитать близкие числа.
    """
    _check_lambda(lam, strict=True)
    root = _theta_root(lam)
    lam_theta = 3.0 * lam + 7.0 + root
    theta = lam_theta / lam
    return (_E / (2.0 * lam)) * (root / lam_theta) / (theta + 2.0 * _EXP_M12)


def barbour_hall_theta(lam: float) -> float:
    """
    Неоптимальный выбор θ = 21·max{1, 1/λ}, на котором построена оценка 1/32.
    """
    _check_lambda(lam, strict=True)
    return 21.0 * max(1.0, 1.0 / lam)


def bound_ratio(lam: float) -> float:
    """
    Отношение верхней оценки Барбура-Холла к нижней оценке K̃₁.
    """
    return barbour_hall_upper_coefficient(lam) / corollary_k1_tilde(lam)


def asymptotic_tv(lam: float, sum_p2: float) -> float:
    """
    Асимптотика Девёльса-Пфайфера: Σpᵢ² / (sqrt(2πe)·λ).

    Точна только в пределе λ → ∞, max pᵢ → 0.
    """
    _check_lambda(lam, strict=True)
    _check_sum_p2(sum_p2)
    return sum_p2 / (_SQRT_2PIE * lam)


def limit_ratio_infinity() -> float:
    """
    Предел bound_ratio при λ → ∞: (6/e)(1 + sqrt(1 + (2/3)e^(-1/2)))².
    """
    return (6.0 / _E) * (1.0 + math.sqrt(1.0 + 2.0 / 3.0 * _EXP_M12)) ** 2


def limit_ratio_zero() -> float:
    """
    Предел bound_ratio при λ → 0: 56/e.
    """
    return 56.0 / _E


def limit_theta_infinity() -> float:
    """
    Предел θ* при λ → ∞: 3 + sqrt(3(3 + 2e^(-1/2))).
    """
    return 3.0 + math.sqrt(3.0 * (3.0 + 2.0 * _EXP_M12))


def reference_constants() -> Mapping[str, float]:
    """
    Справочные значения в той точности, в какой они опубликованы
    (для тестов и вывода CLI). Константа 1/14 в оценках не используется.
    """
    return _REFERENCE_CONSTANTS
