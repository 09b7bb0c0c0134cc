"""
@file: services/arithmetic.py
@description: Недиофантова арифметика ⊕ ⊖ ⊙ ⊘, перенесенная через генератор
@dependencies: math, enum, numpy, services.generator, utils.errors
@created: 2025-02-10
"""

import math
from enum import Enum
from typing import Iterable

import numpy as np

from services.generator import Generator, RealLike
from utils.constants import DIVISION_ZERO_THRESHOLD
from utils.errors import ArithmeticOverflowError, DeformedZeroDivisionError


class Ordering(Enum):
    """Результат сравнения в деформированном порядке"""

    LESS = -1
    EQUAL = 0
    GREATER = 1


def _checked(value: RealLike, operation: str) -> RealLike:
    """Проверка конечности промежуточного результата"""
    if not np.all(np.isfinite(value)):
        raise ArithmeticOverflowError(f"Неконечный результат в операции {operation}")
    return value


class ArithmeticContext:
    """
    Арифметика на X, заданная генератором f

    Значения X хранятся как обычные вещественные числа: деформация
    живет только в операциях. Каждая операция заново вычисляет f и f⁻¹.
    """

    def __init__(self, gen: Generator):
        self.gen = gen
        self.zero = gen.inverse(0.0)
        self.one = gen.inverse(1.0)

    def add(self, x: RealLike, y: RealLike) -> RealLike:
        return add(self, x, y)

    def sub(self, x: RealLike, y: RealLike) -> RealLike:
        return sub(self, x, y)

    def mul(self, x: RealLike, y: RealLike) -> RealLike:
        return mul(self, x, y)

    def div(self, x: RealLike, y: RealLike) -> RealLike:
        return div(self, x, y)

    def compare(self, x: float, y: float) -> Ordering:
        return compare(self, x, y)

    def __repr__(self) -> str:
        return f"ArithmeticContext(gen={self.gen.name!r})"


def add(ctx: ArithmeticContext, x: RealLike, y: RealLike) -> RealLike:
    """x ⊕ y = f⁻¹(f(x) + f(y))"""
    f = ctx.gen.forward
    return ctx.gen.inverse(_checked(np.add(f(x), f(y)), "⊕"))


def sub(ctx: ArithmeticContext, x: RealLike, y: RealLike) -> RealLike:
    """x ⊖ y = f⁻¹(f(x) − f(y))"""
    f = ctx.gen.forward
    return ctx.gen.inverse(_checked(np.subtract(f(x), f(y)), "⊖"))


def mul(ctx: ArithmeticContext, x: RealLike, y: RealLike) -> RealLike:
    """x ⊙ y = f⁻¹(f(x)·f(y))"""
    f = ctx.gen.forward
    return ctx.gen.inverse(_checked(np.multiply(f(x), f(y)), "⊙"))


def div(ctx: ArithmeticContext, x: RealLike, y: RealLike) -> RealLike:
    """
    x ⊘ y = f⁻¹(f(x)/f(y))

    Raises:
        DeformedZeroDivisionError: Если |f(y)| < 1e-300
    """
    f = ctx.gen.forward
    denominator = f(y)
    if np.any(np.abs(denominator) < DIVISION_ZERO_THRESHOLD):
        raise DeformedZeroDivisionError(f"Деление на деформированный ноль: y={y!r}")
    return ctx.gen.inverse(_checked(np.divide(f(x), denominator), "⊘"))


def neg(ctx: ArithmeticContext, x: RealLike) -> RealLike:
    """Деформированная противоположность: zero ⊖ x"""
    return sub(ctx, ctx.zero, x)


def deformed_sum(ctx: ArithmeticContext, values: Iterable[float]) -> float:
    """
    ⊕-свертка значений: f⁻¹(Σ f(vᵢ))

    Сумма образов считается через math.fsum, порядок слагаемых не влияет
    на результат.
    """
    images = np.asarray(ctx.gen.forward(np.asarray(list(values), dtype=float)), dtype=float)
    total = math.fsum(images.ravel().tolist())
    return ctx.gen.inverse(_checked(total, "⊕-свертка"))


def compare(ctx: ArithmeticContext, x: float, y: float) -> Ordering:
    """
    Сравнение по образам f(x) и f(y)

    Для возрастающего f совпадает с обычным порядком x и y.
    """
    fx, fy = ctx.gen.forward(x), ctx.gen.forward(y)
    if fx < fy:
        return Ordering.LESS
    if fx > fy:
        return Ordering.GREATER
    return Ordering.EQUAL
