"""
Главный метод построения кривых отношений верхней и нижних оценок по сетке λ.
"""
import os
from dataclasses import astuple, dataclass
from multiprocessing.pool import ThreadPool as Pool
from typing import Iterable, Mapping, Optional, Sequence

from loguru import logger

from .closed_bounds import barbour_hall_lower_coefficient, barbour_hall_upper_coefficient
from .components.optimizers import BaseK1Search, K1Variant
from .errors import InvalidParameterError

__all__ = [
    'SWEEP_COLUMNS',
    'SweepRow',
    'compute_sweep_row',
    'run_sweep',
    'SWEEP_VARIANTS',
    'parse_sweep_variants',
]

SWEEP_COLUMNS = (
    'lambda',
    'upper_coeff',
    'k1_three',
    'k1_common',
    'k1_closed',
    'bh_lower_coeff',
    'ratio_three',
    'ratio_common',
    'ratio_closed',
    'ratio_bh',
)

SWEEP_VARIANTS = (K1Variant.THREE_PARAM, K1Variant.COMMON_ALPHA, K1Variant.CLOSED_FORM)

_VARIANT_ALIASES = {
    'three': K1Variant.THREE_PARAM,
    'common': K1Variant.COMMON_ALPHA,
    'closed': K1Variant.CLOSED_FORM,
}


@dataclass(frozen=True)
class SweepRow:
    """
    Одна строка кривых отношений при данном λ.
    Коэффициенты невычисленных вариантов (и их отношения) - None.
    """
    lam: float
    upper_coeff: float
    k1_three: Optional[float]
    k1_common: Optional[float]
    k1_closed: Optional[float]
    bh_lower_coeff: float
    ratio_three: Optional[float]
    ratio_common: Optional[float]
    ratio_closed: Optional[float]
    ratio_bh: float

    def as_record(self) -> dict[str, Optional[float]]:
        """
        Словарь со столбцами в порядке SWEEP_COLUMNS.
        """
        return dict(zip(SWEEP_COLUMNS, astuple(self)))


def _get_variant_searches(searches: Mapping) -> dict[K1Variant, BaseK1Search]:
    """
    Ключи - варианты K1Variant (принимаются и их строковые названия).
    """
    return {K1Variant(variant): search for variant, search in searches.items()}


def _get_ratio(upper: float, lower: Optional[float]) -> Optional[float]:
    if lower is None:
        return None
    if lower <= 0.0:
        return float('inf')
    return upper / lower


def compute_sweep_row(lam: float, searches: Mapping[K1Variant, BaseK1Search]) -> SweepRow:
    """
    Считает строку для одного λ выбранными стратегиями
    (ключи searches: three_param, common_alpha, closed_form).
    """
    searches = _get_variant_searches(searches)
    upper = barbour_hall_upper_coefficient(lam)
    bh_lower = barbour_hall_lower_coefficient(lam)

    coefficients = {}
    for variant in SWEEP_VARIANTS:
        search = searches.get(variant)
        coefficients[variant] = None if search is None else search.search(lam).k1

    row = SweepRow(
        lam=lam,
        upper_coeff=upper,
        k1_three=coefficients[K1Variant.THREE_PARAM],
        k1_common=coefficients[K1Variant.COMMON_ALPHA],
        k1_closed=coefficients[K1Variant.CLOSED_FORM],
        bh_lower_coeff=bh_lower,
        ratio_three=_get_ratio(upper, coefficients[K1Variant.THREE_PARAM]),
        ratio_common=_get_ratio(upper, coefficients[K1Variant.COMMON_ALPHA]),
        ratio_closed=_get_ratio(upper, coefficients[K1Variant.CLOSED_FORM]),
        ratio_bh=upper / bh_lower,
    )
    logger.debug(f"Строка кривых: {row}")
    return row


def run_sweep(
        lambdas: Iterable[float],
        searches: Mapping[K1Variant, BaseK1Search],
        *,
        threads_count: Optional[int] = None,
) -> list[SweepRow]:
    """
    Обработка сетки λ. Главный метод команды sweep.

    Args:
        lambdas: сетка значений λ
        searches: стратегии поиска K₁ по вариантам (отсутствующие варианты не считаются)
        threads_count: кол-во потоков, используемых для одновременного расчёта строк

    Строки возвращаются в порядке сетки, независимо от порядка завершения расчётов.
    """
    lambdas: Sequence[float] = [float(lam) for lam in lambdas]
    searches = _get_variant_searches(searches)

    if threads_count is None:
        threads_count = (os.cpu_count() or 2) // 2 + 1
    assert 0 < threads_count, "Кол-во потоков должно быть целым положительным числом"

    logger.info(f"Расчёт {len(lambdas)} строк в {threads_count} потоках, "
                f"варианты: {[v.value for v in searches]}")

    if threads_count == 1:
        return [compute_sweep_row(lam, searches) for lam in lambdas]

    with Pool(processes=threads_count) as pool:
        # imap сохраняет порядок входной сетки
        return list(pool.imap(lambda lam: compute_sweep_row(lam, searches), lambdas))


def parse_sweep_variants(text: str) -> list[K1Variant]:
    """
    Разбирает список вариантов через запятую: полные названия
    (three_param, common_alpha, closed_form) или краткие (three, common, closed).
    Порядок и повторы не важны.

    Example:
        >>> parse_sweep_variants('closed,three')
        [<K1Variant.THREE_PARAM: 'three_param'>, <K1Variant.CLOSED_FORM: 'closed_form'>]
    """
    chosen = set()
    for token in (t.strip().lower() for t in text.split(',')):
        if not token:
            continue
        variant = _VARIANT_ALIASES.get(token)
        if variant is None:
            try:
                variant = K1Variant(token)
            except ValueError:
                raise InvalidParameterError(f"Неизвестный вариант оценки: '{token}'") from None
        if variant not in SWEEP_VARIANTS:
            raise InvalidParameterError(f"Вариант '{token}' не входит в кривые отношений")
        chosen.add(variant)

    if not chosen:
        raise InvalidParameterError("Не выбрано ни одного варианта оценки")
    return [variant for variant in SWEEP_VARIANTS if variant in chosen]
