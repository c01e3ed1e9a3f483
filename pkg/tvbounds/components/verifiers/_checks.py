import math
from dataclasses import dataclass

from loguru import logger


@dataclass(frozen=True)
class CheckResult:
    """
    Итог одной проверки.

    Attributes:
        suite: имя набора
        name: имя проверки
        passed: сколько случаев прошло
        total: сколько случаев проверено
        worst_margin: наименьший запас (допуск минус ошибка), < 0 - провал
    """
    suite: str
    name: str
    passed: int
    total: int
    worst_margin: float

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    @property
    def status(self) -> str:
        return 'PASS' if self.ok else 'FAIL'


class CheckAccumulator:
    """
    Копит запасы отдельных случаев одной проверки.
    """

    def __init__(self, suite: str, name: str):
        self._suite = suite
        self._name = name
        self._passed = 0
        self._total = 0
        self._worst_margin = math.inf

    def add(self, margin: float, *, case=None) -> None:
        """
        margin - на сколько проверяемое неравенство выполнено с запасом.
        NaN считается провалом.
        """
        self._total += 1
        if margin >= 0.0:
            self._passed += 1
        else:
            logger.error(f"{self._suite}/{self._name}: провал на {case}, запас {margin!r}")
        if math.isnan(margin) or margin < self._worst_margin:
            self._worst_margin = margin

    def add_le(self, lhs: float, rhs: float, tol: float = 0.0, *, case=None) -> None:
        """
        Проверка lhs ≤ rhs + tol.
        """
        self.add(rhs + tol - lhs, case=case)

    def add_close(self, actual: float, expected: float, tol: float, *, case=None) -> None:
        """
        Проверка |actual - expected| ≤ tol.
        """
        self.add(tol - abs(actual - expected), case=case)

    def result(self) -> CheckResult:
        worst = self._worst_margin if self._total else 0.0
        return CheckResult(self._suite, self._name, self._passed, self._total, worst)
