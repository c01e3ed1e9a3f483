"""
Исключения, которыми библиотека сообщает о некорректных входных данных.

CLI превращает их в коды возврата (см. `main.py`).
"""

__all__ = [
    'TVBoundsError',
    'InvalidInstanceError',
    'InvalidParameterError',
    'InfeasibleParamsError',
    'DegenerateParamsError',
    'InstanceTooLargeError',
    'InstanceFileError',
]


class TVBoundsError(Exception):
    """
    Базовое исключение проекта.
    """


class InvalidInstanceError(TVBoundsError, ValueError):
    """
    Некорректный набор вероятностей (вне [0, 1], NaN, пустой список и т.п.)
    """


class InvalidParameterError(TVBoundsError, ValueError):
    """
    Некорректный числовой параметр (отрицательная λ, θ ≤ 0 и т.п.)
    """


class InfeasibleParamsError(InvalidParameterError):
    """
    Параметры вне допустимого множества оптимизации (α₂ > λ + 3/2).
    """


class DegenerateParamsError(TVBoundsError, ArithmeticError):
    """
    Параметры, при которых знаменатель оценки обращается в ноль.
    """


class InstanceTooLargeError(TVBoundsError):
    """
    Размер задачи превышает лимит точного (переборного) вычисления.
    """


class InstanceFileError(TVBoundsError, OSError):
    """
    Ошибка чтения файла с вероятностями или записи результата.
    """
