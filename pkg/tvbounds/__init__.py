"""
Основной (корневой) модуль проекта: точное расстояние полной вариации между
суммой независимых бернуллиевских величин и распределением Пуассона,
верхние и нижние оценки этого расстояния и их численная проверка.
"""
