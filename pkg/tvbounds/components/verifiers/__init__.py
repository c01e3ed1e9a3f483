"""
Проверочные наборы: численная проверка тождеств и неравенств,
на которых построены оценки. Запускаются командой verify.
"""

from ._checks import *
from ._suites import *

__all__ = [
    'CheckResult',
    'CheckAccumulator',
    'BaseSuite',
    'SteinSuite',
    'SandwichSuite',
    'OrderingSuite',
    'LimitsSuite',
    'run_suites',
]
