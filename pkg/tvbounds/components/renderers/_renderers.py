import abc
import csv
import io
import json
from typing import Optional, Sequence

from ..verifiers import CheckResult
from ...closed_bounds import BoundReport
from ...errors import InvalidInstanceError
from ...math_utils import format_float
from ...sweep import SWEEP_COLUMNS, SweepRow

JSON_SCHEMA_VERSION = 1

REPORT_COLUMNS = (
    'n',
    'lambda',
    'sum_p2',
    'le_cam',
    'bh_upper',
    'bh_lower',
    'corollary_lower',
    'theta_star',
    'asymptotic_tv',
    'k1_lower',
    'k1_common_alpha_lower',
    'exact_tv',
)

CHECK_COLUMNS = ('suite', 'name', 'passed', 'total', 'status', 'worst_margin')


def _format_cell(value) -> str:
    if value is None:
        return ''
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return str(value)
    return format_float(value)


def _get_vacuous_names(report: BoundReport) -> str:
    return ';'.join(name for name, flag in report.vacuous_flags.items() if flag)


class BaseRenderer(metaclass=abc.ABCMeta):
    """
    Базовый класс для всех форматов вывода.
    """

    @abc.abstractmethod
    def render_report(self, report: BoundReport) -> str:
        """Оценки для одного набора вероятностей"""

    @abc.abstractmethod
    def render_rows(self, rows: Sequence[SweepRow]) -> str:
        """Строки кривых отношений"""

    @abc.abstractmethod
    def render_checks(self, checks: Sequence[CheckResult]) -> str:
        """Результаты проверочных наборов"""


class CsvRenderer(BaseRenderer):
    """
    CSV в UTF-8 через запятую, заголовок присутствует всегда.
    Числа - в кратчайшем представлении, восстанавливающем значение без потерь.
    """

    @staticmethod
    def _write(header: Sequence[str], records: Sequence[Sequence]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(header)
        for record in records:
            writer.writerow([_format_cell(value) for value in record])
        return buffer.getvalue()

    def render_report(self, report: BoundReport) -> str:
        data = report.to_dict()
        record = [data[column] for column in REPORT_COLUMNS]
        record += [report.is_consistent(), _get_vacuous_names(report)]
        return self._write(REPORT_COLUMNS + ('consistent', 'vacuous'), [record])

    def render_rows(self, rows: Sequence[SweepRow]) -> str:
        return self._write(SWEEP_COLUMNS, [list(row.as_record().values()) for row in rows])

    def render_checks(self, checks: Sequence[CheckResult]) -> str:
        return self._write(CHECK_COLUMNS, [
            (c.suite, c.name, c.passed, c.total, c.status, c.worst_margin) for c in checks
        ])


class JsonRenderer(BaseRenderer):
    """
    JSON с версией схемы на верхнем уровне. Отсутствующие значения - null.
    """

    def __init__(self, *, indent: Optional[int] = 2):
        self._indent = indent

    def _dump(self, payload: dict) -> str:
        return json.dumps({'schema_version': JSON_SCHEMA_VERSION, **payload},
                          indent=self._indent, ensure_ascii=False) + '\n'

    def render_report(self, report: BoundReport) -> str:
        data = report.to_dict()
        data['is_consistent'] = report.is_consistent()
        return self._dump({'report': data})

    def render_rows(self, rows: Sequence[SweepRow]) -> str:
        return self._dump({'rows': [row.as_record() for row in rows]})

    def render_checks(self, checks: Sequence[CheckResult]) -> str:
        return self._dump({
            'all_passed': all(c.ok for c in checks),
            'checks': [dict(zip(CHECK_COLUMNS, (c.suite, c.name, c.passed, c.total, c.status, c.worst_margin)))
                       for c in checks],
        })


def parse_report(text: str) -> BoundReport:
    """
    Восстанавливает BoundReport из вывода JsonRenderer.render_report.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInstanceError(f"Некорректный JSON отчёта: {e}") from e

    version = payload.get('schema_version')
    if version != JSON_SCHEMA_VERSION:
        raise InvalidInstanceError(f"Неподдерживаемая версия схемы: {version}")

    data = dict(payload['report'])
    data.pop('is_consistent', None)
    return BoundReport.from_dict(data)


class TableRenderer(BaseRenderer):
    """
    Выровненная текстовая таблица для чтения человеком.
    """

    @staticmethod
    def _format_table(header: Sequence[str], records: Sequence[Sequence]) -> str:
        cells = [list(header)] + [[_format_cell(value) or '-' for value in record] for record in records]
        widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
        lines = ['  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in cells]
        lines.insert(1, '  '.join('-' * width for width in widths))
        return '\n'.join(lines) + '\n'

    def render_report(self, report: BoundReport) -> str:
        data = report.to_dict()
        records = [(column, data[column]) for column in REPORT_COLUMNS]
        records.append(('consistent', report.is_consistent()))
        records.append(('vacuous', _get_vacuous_names(report) or None))
        return self._format_table(('bound', 'value'), records)

    def render_rows(self, rows: Sequence[SweepRow]) -> str:
        return self._format_table(SWEEP_COLUMNS, [list(row.as_record().values()) for row in rows])

    def render_checks(self, checks: Sequence[CheckResult]) -> str:
        table = self._format_table(CHECK_COLUMNS, [
            (c.suite, c.name, c.passed, c.total, c.status, c.worst_margin) for c in checks
        ])
        failed = sum(not c.ok for c in checks)
        return table + f"\n{len(checks) - failed} passed, {failed} failed\n"
