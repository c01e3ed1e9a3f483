"""
Функции, из которых собирается коэффициент K₁(λ):
h_λ, g_λ, вспомогательная функция x(u) и нули её производной (кубическое уравнение).
"""
import math
from dataclasses import dataclass

import numpy as np
from loguru import logger

from ...errors import InfeasibleParamsError, InvalidParameterError
from ...math_utils import get_cube_root, get_positive_part

__all__ = [
    'CubicCoeffs',
    'CubicRoots',
    'x_eval',
    'cubic_real_roots',
    'x_extrema',
    'h_lambda',
    'g_lambda',
    'k1_objective',
]

_EXP_M32 = math.exp(-1.5)
_POLISH_STEPS = 8


@dataclass(frozen=True)
class CubicCoeffs:
    """
    Коэффициенты x(u) = (c₀ + c₁u + c₂u²)·exp(-u²).

    При θ, λ > 0 всегда c₂ = -θλ < 0.
    """
    c0: float
    c1: float
    c2: float

    def __post_init__(self):
        if not self.c2 < 0.0:
            raise InvalidParameterError(f"Ожидается c₂ < 0, получено {self.c2}")

    @classmethod
    def from_params(cls, lam: float, alpha1: float, alpha2: float, theta: float) -> 'CubicCoeffs':
        theta_lam = theta * lam
        return cls(
            c0=(alpha2 - alpha1) * (lam - alpha2),
            c1=math.sqrt(theta_lam) * (lam + alpha1 - 2.0 * alpha2),
            c2=-theta_lam,
        )

    def polynomial(self) -> tuple[float, float, float, float]:
        """
        Коэффициенты (a₃, a₂, a₁, a₀) уравнения
        2c₂u³ + 2c₁u² - 2(c₂ - c₀)u - c₁ = 0.
        """
        return 2.0 * self.c2, 2.0 * self.c1, -2.0 * (self.c2 - self.c0), -self.c1

    def scale(self) -> float:
        return max(1.0, abs(self.c0), abs(self.c1), abs(self.c2))


@dataclass(frozen=True)
class CubicRoots:
    """
    Вещественные нули кубического уравнения (по возрастанию) и невязки в них.
    """
    roots: tuple[float, ...]
    residuals: tuple[float, ...]


def _x_value(c: CubicCoeffs, u: float) -> float:
    return (c.c0 + c.c1 * u + c.c2 * u * u) * math.exp(-u * u)


def x_eval(c: CubicCoeffs, u):
    """
    x(u) = (c₀ + c₁u + c₂u²)·exp(-u²). Принимает число или numpy-массив.
    """
    if np.ndim(u) == 0:
        return _x_value(c, float(u))
    u = np.asarray(u, dtype=np.float64)
    return (c.c0 + c.c1 * u + c.c2 * u * u) * np.exp(-u * u)


def _get_raw_roots(a3: float, a2: float, a1: float, a0: float) -> list[float]:
    """
    Корни кубического уравнения по Кардано (один корень)
    или тригонометрическим методом (три корня).
    """
    b, c, d = a2 / a3, a1 / a3, a0 / a3

    # t³ + pt + q = 0 при u = t - b/3
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    shift = -b / 3.0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3

    if p < 0.0 and disc <= 0.0:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = (3.0 * q / (2.0 * p)) * math.sqrt(-3.0 / p)
        phi = math.acos(min(1.0, max(-1.0, arg))) / 3.0
        return [m * math.cos(phi - 2.0 * math.pi * i / 3.0) + shift for i in range(3)]

    # знак выбран так, чтобы не вычитать близкие числа
    w = -q / 2.0 - math.copysign(math.sqrt(get_positive_part(disc)), q)
    a = get_cube_root(w)
    t = a - p / (3.0 * a) if a != 0.0 else 0.0
    return [t + shift]


def _polish_root(poly: tuple[float, float, float, float], u: float) -> tuple[float, float]:
    """
    Несколько шагов Ньютона; шаг принимается, только если невязка уменьшилась.
    """
    a3, a2, a1, a0 = poly
    value = ((a3 * u + a2) * u + a1) * u + a0
    for _ in range(_POLISH_STEPS):
        if value == 0.0:
            break
        slope = (3.0 * a3 * u + 2.0 * a2) * u + a1
        if slope == 0.0:
            break
        candidate = u - value / slope
        candidate_value = ((a3 * candidate + a2) * candidate + a1) * candidate + a0
        if abs(candidate_value) >= abs(value):
            break
        u, value = candidate, candidate_value
    return u, value


def cubic_real_roots(c: CubicCoeffs) -> CubicRoots:
    """
    Вещественные нули 2c₂u³ + 2c₁u² - 2(c₂ - c₀)u - c₁ = 0,
    т.е. критические точки x(u).
    """
    poly = c.polynomial()
    polished = sorted(_polish_root(poly, u) for u in _get_raw_roots(*poly))

    roots, residuals = [], []
    for u, value in polished:
        if roots and abs(u - roots[-1]) <= 1e-12 * max(1.0, abs(u)):
            continue
        roots.append(u)
        residuals.append(value)

    if len(roots) != 3:
        logger.debug("У кубического уравнения {} вещественных корня(ей): {}", len(roots), c)
    return CubicRoots(roots=tuple(roots), residuals=tuple(residuals))


def x_extrema(c: CubicCoeffs) -> tuple[float, float]:
    """
    Точные нижняя и верхняя грани x(u) по всей прямой.

    Кандидаты - критические точки и предел x(±∞) = 0: если все критические
    значения отрицательны, верхняя грань 0 не достигается, но остаётся гранью.
    """
    values = [_x_value(c, u) for u in cubic_real_roots(c).roots]
    return min(0.0, *values), max(0.0, *values)


def _check_theta(theta: float) -> None:
    if not theta > 0.0:
        raise InvalidParameterError(f"θ должна быть положительной, получено {theta}")


def _check_lambda(lam: float) -> None:
    if not lam > 0.0:
        raise InvalidParameterError(f"λ должна быть положительной, получено {lam}")


def h_lambda(lam: float, alpha1: float, alpha2: float, theta: float) -> float:
    """
    h_λ(α₁, α₂, θ) - поправка к числителю оценки Чена-Стейна.
    """
    _check_lambda(lam)
    _check_theta(theta)
    theta_lam = theta * lam
    # (a+1)³ - a³ = 3a² + 3a + 1 при a = 1 - α₂ + λ
    a = 1.0 - alpha2 + lam
    cubic_part = 3.0 * lam + 3.0 * a * a + 3.0 * a + 1.0
    shift_part = (
            abs(alpha1 - alpha2)
            * (2.0 * lam + abs(3.0 - 2.0 * alpha2))
            * math.exp(-get_positive_part(1.0 - alpha2) ** 2 / theta_lam)
    )
    return (cubic_part + shift_part) / theta_lam


def g_lambda(lam: float, alpha1: float, alpha2: float, theta: float) -> float:
    """
    g_λ(α₁, α₂, θ) - верхняя оценка sup_k |λf(k+1) - kf(k)|.
    """
    _check_lambda(lam)
    _check_theta(theta)
    x_min, x_max = x_extrema(CubicCoeffs.from_params(lam, alpha1, alpha2, theta))
    slope = math.sqrt(2.0 / (theta * lam * math.e)) * abs(alpha1 - alpha2)
    return max(
        abs((1.0 + slope) * lam + x_max),
        abs((2.0 * _EXP_M32 + slope) * lam - x_min),
    )


def k1_objective(lam: float, alpha1: float, alpha2: float, theta: float) -> float:
    """
    (1 - h_λ)/(2g_λ) - величина под супремумом в определении K₁(λ).
    Может быть отрицательной (бессодержательный кандидат).
    """
    _check_lambda(lam)
    if alpha2 > lam + 1.5:
        raise InfeasibleParamsError(f"α₂ = {alpha2} > λ + 3/2 = {lam + 1.5}")
    return (1.0 - h_lambda(lam, alpha1, alpha2, theta)) / (2.0 * g_lambda(lam, alpha1, alpha2, theta))
