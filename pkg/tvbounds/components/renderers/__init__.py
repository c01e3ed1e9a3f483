"""
Форматы вывода результатов: CSV, JSON и текстовая таблица.

Формат выбирается в конфиге (output.using) или флагом --format.
"""

from ._renderers import *

__all__ = [
    'JSON_SCHEMA_VERSION',
    'REPORT_COLUMNS',
    'BaseRenderer',
    'CsvRenderer',
    'JsonRenderer',
    'TableRenderer',
    'parse_report',
]
