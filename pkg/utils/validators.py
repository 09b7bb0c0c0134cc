"""
@file: utils/validators.py
@description: Валидаторы аргументов командной строки: углы, сетки, объемы выборки, формат
@dependencies: argparse, math, re, typing, utils.constants
@created: 2025-01-06
"""

import argparse
import math
import re
from typing import Any, List

from utils.constants import OutputFormats

# "pi", "-pi/2", "3pi/4", "3*pi/4", "0.5π", "2 pi / 3"
_PI_EXPRESSION = re.compile(
    r"^(?P<coef>[+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*(?:pi|π)\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?$",
    re.IGNORECASE,
)


class ValidationResult:
    """Результат валидации"""

    def __init__(self, is_valid: bool, error_message: str = "", cleaned_value: Any = None):
        self.is_valid = is_valid
        self.error_message = error_message
        self.cleaned_value = cleaned_value


class CliValidators:
    """Валидаторы аргументов CLI"""

    @staticmethod
    def validate_angle(text: str) -> ValidationResult:
        """
        Разбор угла в радианах

        Args:
            text: Число ("0.785") или кратное π ("pi/4", "3pi/4", "-π")

        Returns:
            ValidationResult: cleaned_value - угол float
        """
        if text is None or not str(text).strip():
            return ValidationResult(False, "Угол не может быть пустым")

        cleaned = str(text).strip().replace("−", "-")
        match = _PI_EXPRESSION.match(cleaned)
        if match:
            coef_text = match.group("coef")
            if coef_text in ("", "+"):
                coef = 1.0
            elif coef_text == "-":
                coef = -1.0
            else:
                coef = float(coef_text)
            den = float(match.group("den")) if match.group("den") else 1.0
            if den == 0.0:
                return ValidationResult(False, f"Деление на ноль в угле '{text}'")
            return ValidationResult(True, "", coef * math.pi / den)

        try:
            value = float(cleaned)
        except ValueError:
            return ValidationResult(False, f"Не удалось разобрать угол '{text}'")
        if not math.isfinite(value):
            return ValidationResult(False, f"Угол '{text}' не конечен")
        return ValidationResult(True, "", value)

    @staticmethod
    def validate_angle_list(text: str) -> ValidationResult:
        """Список углов через запятую"""
        if text is None or not str(text).strip():
            return ValidationResult(False, "Список углов пуст")
        angles: List[float] = []
        for part in str(text).split(","):
            result = CliValidators.validate_angle(part)
            if not result.is_valid:
                return result
            angles.append(result.cleaned_value)
        return ValidationResult(True, "", angles)

    @staticmethod
    def validate_min_int(value: int, minimum: int, name: str) -> ValidationResult:
        """Целое не меньше minimum"""
        if value < minimum:
            return ValidationResult(False, f"{name} должно быть не меньше {minimum}, получено {value}")
        return ValidationResult(True, "", int(value))

    @staticmethod
    def validate_seed(seed: int) -> ValidationResult:
        """64-битное неотрицательное зерно"""
        if not 0 <= seed < (1 << 64):
            return ValidationResult(False, f"Зерно должно лежать в [0, 2^64), получено {seed}")
        return ValidationResult(True, "", int(seed))

    @staticmethod
    def validate_interval(lo: float, hi: float, name: str = "интервал") -> ValidationResult:
        """Отрезок с lo < hi"""
        if not (math.isfinite(lo) and math.isfinite(hi)):
            return ValidationResult(False, f"Границы {name} должны быть конечны")
        if not lo < hi:
            return ValidationResult(False, f"Требуется нижняя граница < верхней: {lo!r} ≥ {hi!r}")
        return ValidationResult(True, "", (lo, hi))

    @staticmethod
    def validate_tolerance(tolerance: float) -> ValidationResult:
        if not (math.isfinite(tolerance) and tolerance > 0.0):
            return ValidationResult(False, f"Допуск должен быть положительным, получено {tolerance!r}")
        return ValidationResult(True, "", float(tolerance))

    @staticmethod
    def validate_format(format_str: str) -> ValidationResult:
        """Формат вывода csv|json"""
        cleaned = (format_str or "").strip().lower()
        if cleaned not in OutputFormats.ALL:
            return ValidationResult(
                False, f"Неподдерживаемый формат '{format_str}'. Доступны: {', '.join(OutputFormats.ALL)}"
            )
        return ValidationResult(True, "", cleaned)


def angle_argument(text: str) -> float:
    """Тип аргумента argparse для угла (ошибка разбора дает код выхода 2)"""
    result = CliValidators.validate_angle(text)
    if not result.is_valid:
        raise argparse.ArgumentTypeError(result.error_message)
    return result.cleaned_value


def angle_list_argument(text: str) -> List[float]:
    """Тип аргумента argparse для списка углов через запятую"""
    result = CliValidators.validate_angle_list(text)
    if not result.is_valid:
        raise argparse.ArgumentTypeError(result.error_message)
    return result.cleaned_value
