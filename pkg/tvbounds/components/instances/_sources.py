import abc
import csv
import math
from pathlib import Path
from typing import Iterable, Union

from loguru import logger

from ...distributions import ProbVector
from ...errors import InstanceFileError, InvalidInstanceError


def _to_probability(token: str, *, where: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise InvalidInstanceError(f"Не число в {where}: '{token}'") from None
    if math.isnan(value):
        raise InvalidInstanceError(f"NaN в {where}")
    return value


def parse_probs(tokens: Iterable[str], *, where: str = 'списке вероятностей') -> ProbVector:
    """
    Собирает ProbVector из строковых значений; пустые значения пропускаются.
    Пустой набор считается ошибкой.
    """
    probs = [_to_probability(t.strip(), where=where) for t in tokens if t.strip()]
    if not probs:
        raise InvalidInstanceError(f"Пустой набор вероятностей в {where}")
    return ProbVector.from_iterable(probs)


class BaseInstanceSource(metaclass=abc.ABCMeta):
    """
    Базовый класс для всех способов задать набор p₁..pₙ.
    """

    @abc.abstractmethod
    def get_instance(self) -> ProbVector:
        """Возвращает проверенный набор вероятностей"""


class ListSource(BaseInstanceSource):
    """
    Набор, перечисленный через запятую (например "0.1,0.2,0.05").
    """

    def __init__(self, probs: str):
        self._probs = probs

    def get_instance(self) -> ProbVector:
        return parse_probs(self._probs.split(','))


class EqualSource(BaseInstanceSource):
    """
    n одинаковых вероятностей λ/n.
    """

    def __init__(self, *, lam: float, n: int):
        self._lam = lam
        self._n = n

    def get_instance(self) -> ProbVector:
        return ProbVector.from_lambda(self._lam, self._n)


class FileSource(BaseInstanceSource):
    """
    CSV-файл с вероятностями: любые разделители строк и столбцов,
    строки, начинающиеся с '#', - комментарии.
    """

    def __init__(self, path: Union[str, Path]):
        self._path = Path(path)

    def get_instance(self) -> ProbVector:
        logger.info(f"Чтение вероятностей из '{self._path}'")
        try:
            with self._path.open(newline='', encoding='utf-8') as file:
                rows = [row for row in csv.reader(file) if row and not row[0].lstrip().startswith('#')]
        except (OSError, UnicodeDecodeError, csv.Error) as e:
            raise InstanceFileError(f"Не удалось прочитать '{self._path}': {e}") from e

        return parse_probs((cell for row in rows for cell in row), where=f"файле '{self._path}'")
