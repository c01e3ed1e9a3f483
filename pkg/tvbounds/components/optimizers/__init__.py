"""
Коэффициент K₁(λ) улучшенной нижней оценки и способы его максимизации.

Способ (вариант) выбирается при вызове, параметры поиска - из конфига.
"""

from ._methods import *
from ._optimizers import *

__all__ = [
    'CubicCoeffs',
    'CubicRoots',
    'x_eval',
    'cubic_real_roots',
    'x_extrema',
    'h_lambda',
    'g_lambda',
    'k1_objective',
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
