"""
@file: utils/errors.py
@description: Иерархия исключений вычислительного движка
@dependencies: typing
@created: 2025-02-10
"""

from typing import Optional


class EngineError(Exception):
    """Базовое исключение движка неньютоновского исчисления"""


class GeneratorDomainError(EngineError, ValueError):
    """Аргумент вне области определения генератора (или не конечен)"""


class PieceSelectionError(EngineError):
    """Подкоренное выражение вне [0, 1] после выбора куска: ошибка выбора куска"""

    def __init__(self, x: float, radicand: float):
        super().__init__(
            f"Подкоренное выражение {radicand!r} вне [0, 1] для x={x!r}"
        )
        self.x = x
        self.radicand = radicand


class GeneratorConstructionError(EngineError, ValueError):
    """Пользовательская биекция не прошла проверку монотонности или обратимости"""


class ArithmeticOverflowError(EngineError, ArithmeticError):
    """Неконечный промежуточный результат в деформированной арифметике"""


class DeformedZeroDivisionError(EngineError, ZeroDivisionError):
    """Деление на деформированный ноль: |f(y)| < 1e-300"""


class DifferentiationError(EngineError):
    """Конечно-разностная производная не сошлась или не конечна"""


class QuadratureBudgetError(EngineError):
    """Бюджет панелей исчерпан до достижения точности"""

    def __init__(self, estimate: float, error_bound: float, panels: int,
                 message: Optional[str] = None):
        super().__init__(
            message or (
                f"Бюджет панелей исчерпан: panels={panels}, "
                f"оценка={estimate!r}, погрешность≤{error_bound!r}"
            )
        )
        self.estimate = estimate
        self.error_bound = error_bound
        self.panels = panels


class UnknownGeneratorError(EngineError, KeyError):
    """Генератор с таким именем не зарегистрирован"""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "неизвестный генератор"


class UsageError(EngineError):
    """Некорректные аргументы командной строки (код выхода 2)"""
