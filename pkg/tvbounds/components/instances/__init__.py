"""
Источники наборов вероятностей: явный список, λ и n, CSV-файл.
"""

from ._sources import *

__all__ = [
    'BaseInstanceSource',
    'ListSource',
    'EqualSource',
    'FileSource',
    'parse_probs',
]
