"""
Компоненты для DI-инъекции
"""
