"""
Универсальные численные функции, которые облегчают жизнь.
Делают простые действия и не зависят от конкретных оценок.
"""
import math
from typing import Iterable, Optional

import numpy as np

from .errors import InvalidParameterError

__all__ = [
    'get_positive_part',
    'get_cube_root',
    'get_stable_sum',
    'get_relative_error',
    'get_lambda_grid',
    'format_float',
]


def get_positive_part(x: float) -> float:
    """
    Положительная часть числа: x₊ = max{x, 0}.
    """
    return x if x > 0.0 else 0.0


def get_cube_root(x: float) -> float:
    """
    Вещественный кубический корень (в том числе из отрицательного числа).
    """
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def get_stable_sum(values: Iterable[float]) -> float:
    """
    Сумма без накопления ошибок округления (сумма Шевчука через math.fsum).
    """
    return math.fsum(float(v) for v in values)


def get_relative_error(actual: float, expected: float) -> float:
    """
    Относительная погрешность |actual - expected| / |expected|
    (абсолютная, если expected == 0).
    """
    if expected == 0.0:
        return abs(actual)
    return abs(actual - expected) / abs(expected)


def get_lambda_grid(
        lambda_min: float,
        lambda_max: float,
        points: int,
        *,
        scale: str = 'log',
) -> np.ndarray:
    """
    Возвращает сетку значений λ на отрезке [lambda_min; lambda_max].

    Args:
        scale: 'log' - равномерная в логарифмическом масштабе, 'linear' - обычная

    Example:
        >>> get_lambda_grid(0.1, 10, 3)
        array([ 0.1,  1. , 10. ])
    """
    if not (0.0 < lambda_min < lambda_max) or not math.isfinite(lambda_max):
        raise InvalidParameterError(
            f"Некорректный диапазон λ: [{lambda_min}; {lambda_max}]")
    if points < 2:
        raise InvalidParameterError(f"Нужно хотя бы 2 точки сетки, получено {points}")

    if scale == 'log':
        grid = np.geomspace(lambda_min, lambda_max, points)
    elif scale == 'linear':
        grid = np.linspace(lambda_min, lambda_max, points)
    else:
        raise InvalidParameterError(f"Неизвестный масштаб сетки: '{scale}'")

    # концы отрезка должны совпадать с запрошенными до бита
    grid[0], grid[-1] = lambda_min, lambda_max
    return grid


def format_float(value: Optional[float]) -> str:
    """
    Кратчайшее представление числа, из которого оно восстанавливается без потерь.
    None превращается в пустую строку.
    """
    if value is None:
        return ''
    return repr(float(value))
