"""
@file: services/quadrature.py
@description: Квадратуры в r-области: адаптивный Симпсон, составной Гаусс–Лежандр, сумма Римана
@dependencies: math, enum, numpy, pydantic, utils.errors
@created: 2025-02-11
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from utils.errors import EngineError, QuadratureBudgetError

logger = logging.getLogger(__name__)

# Минимальная глубина деления в адаптивном Симпсоне (4 панели)
MIN_SIMPSON_DEPTH = 2

# Число узлов Гаусса–Лежандра на панель
GAUSS_NODES = 10

# Относительный сдвиг концов сегмента внутрь при заданных точках разрыва
ONE_SIDED_OFFSET = 1e-9

# Размер блока при векторном вычислении суммы Римана
RIEMANN_CHUNK = 1 << 18


class QuadratureMethod(str, Enum):
    """Метод интегрирования в r-области"""

    ADAPTIVE_SIMPSON = "adaptive_simpson"
    GAUSS_LEGENDRE_COMPOSITE = "gauss_legendre_composite"
    RIEMANN_ORACLE = "riemann_oracle"


class QuadratureConfig(BaseModel):
    """
    Настройки квадратуры

    Attributes:
        method: Метод интегрирования
        tolerance: Абсолютная точность в r-области
        max_subdivisions: Бюджет панелей
        oracle_panels: Число панелей суммы Римана
    """

    model_config = ConfigDict(frozen=True)

    method: QuadratureMethod = QuadratureMethod.ADAPTIVE_SIMPSON
    tolerance: float = Field(default=1e-10, gt=0.0)
    max_subdivisions: int = Field(default=1 << 20, ge=4)
    oracle_panels: int = Field(default=10 ** 6, ge=10)


@dataclass(frozen=True)
class QuadratureResult:
    """Значение интеграла, оценка погрешности (nan если не оценивалась) и число панелей"""

    value: float
    error: float
    panels: int


class VectorizedIntegrand:
    """
    Обертка подынтегральной функции: массив точек → массив значений

    Сначала функция вызывается с массивом; если она умеет только скаляры
    (TypeError/ValueError), дальше вызывается поэлементно. Скалярный
    ответ на массив считается константой.
    """

    def __init__(self, func: Callable):
        self.func = func
        self.vectorized: Optional[bool] = None

    def __call__(self, points: np.ndarray) -> np.ndarray:
        if self.vectorized is not False:
            try:
                values = np.asarray(self.func(points), dtype=float)
            except EngineError:
                raise
            except (TypeError, ValueError):
                if self.vectorized:
                    raise
                self.vectorized = False
            else:
                self.vectorized = True
                if values.ndim == 0:
                    return np.full(points.shape, float(values))
                return values
        return np.array([float(self.func(float(p))) for p in points.ravel()]).reshape(points.shape)


def adaptive_simpson(func: Callable, a: float, b: float,
                     tolerance: float, max_panels: int) -> QuadratureResult:
    """
    Адаптивный метод Симпсона с явным бюджетом панелей

    Обход итеративный; принятые панели суммируются слева направо через
    math.fsum, поэтому результат не зависит от порядка вычислений.

    Raises:
        QuadratureBudgetError: Если для точности нужно больше max_panels панелей
    """
    integrand = func if isinstance(func, VectorizedIntegrand) else VectorizedIntegrand(func)
    m = 0.5 * (a + b)
    fa, fm, fb = integrand(np.array([a, m, b]))
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    # (a, b, fa, fm, fb, оценка панели, допуск, глубина, погрешность родителя)
    stack: List[Tuple] = [(a, b, fa, fm, fb, whole, tolerance, 0, math.inf)]
    accepted: List[Tuple[float, float, float]] = []
    panels = 1

    while stack:
        lo, hi, f_lo, f_mid, f_hi, estimate, tol, depth, parent_error = stack.pop()
        mid = 0.5 * (lo + hi)
        left_mid, right_mid = 0.5 * (lo + mid), 0.5 * (mid + hi)
        f_lm, f_rm = integrand(np.array([left_mid, right_mid]))
        left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lm + f_mid)
        right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_rm + f_hi)
        delta = left + right - estimate

        unresolvable = not (lo < left_mid < mid < right_mid < hi)
        if (depth >= MIN_SIMPSON_DEPTH and abs(delta) <= 15.0 * tol) or unresolvable:
            accepted.append((lo, left + right + delta / 15.0, abs(delta) / 15.0))
            continue

        if panels + 1 > max_panels:
            pending = [item[5] for item in stack]
            pending_error = [min(item[8], abs(item[5])) for item in stack]
            estimate_total = math.fsum([v for _, v, _ in accepted] + [left + right] + pending)
            error_total = math.fsum([e for _, _, e in accepted] + [abs(delta) / 15.0] + pending_error)
            raise QuadratureBudgetError(estimate_total, error_total, panels)

        panels += 1
        child_error = abs(delta) / 30.0
        stack.append((mid, hi, f_mid, f_rm, f_hi, right, 0.5 * tol, depth + 1, child_error))
        stack.append((lo, mid, f_lo, f_lm, f_mid, left, 0.5 * tol, depth + 1, child_error))

    accepted.sort(key=lambda item: item[0])
    value = math.fsum(v for _, v, _ in accepted)
    error = math.fsum(e for _, _, e in accepted)
    return QuadratureResult(value=value, error=error, panels=panels)


def gauss_legendre_composite(func: Callable, a: float, b: float,
                             tolerance: float, max_panels: int,
                             nodes: int = GAUSS_NODES) -> QuadratureResult:
    """
    Составная квадратура Гаусса–Лежандра с удвоением числа панелей

    Узлы не попадают на концы панелей, поэтому разрывы на концах
    сегментов не влияют на результат.

    Raises:
        QuadratureBudgetError: Если удвоение превысило max_panels
    """
    integrand = func if isinstance(func, VectorizedIntegrand) else VectorizedIntegrand(func)
    x, w = np.polynomial.legendre.leggauss(nodes)

    def composite(panel_count: int) -> float:
        edges = np.linspace(a, b, panel_count + 1)
        half = 0.5 * np.diff(edges)
        centers = 0.5 * (edges[:-1] + edges[1:])
        points = centers[:, None] + half[:, None] * x[None, :]
        values = integrand(points.ravel()).reshape(points.shape)
        return math.fsum((half * (values @ w)).tolist())

    panel_count = 1
    previous = composite(panel_count)
    while True:
        if 2 * panel_count > max_panels:
            raise QuadratureBudgetError(previous, math.inf, panel_count)
        panel_count *= 2
        current = composite(panel_count)
        error = abs(current - previous)
        if error <= tolerance:
            return QuadratureResult(value=current, error=error, panels=panel_count)
        previous = current


def midpoint_sum(func: Callable, a: float, b: float, panels: int) -> QuadratureResult:
    """Сумма Римана по серединам равномерного разбиения [a, b] на panels частей"""
    integrand = func if isinstance(func, VectorizedIntegrand) else VectorizedIntegrand(func)
    h = (b - a) / panels
    partial: List[float] = []
    for start in range(0, panels, RIEMANN_CHUNK):
        index = np.arange(start, min(start + RIEMANN_CHUNK, panels), dtype=float)
        partial.append(float(np.sum(integrand(a + (index + 0.5) * h))))
    return QuadratureResult(value=h * math.fsum(partial), error=math.nan, panels=panels)


def _segments(a: float, b: float, breakpoints: Sequence[float]) -> List[Tuple[float, float]]:
    inner = sorted({float(p) for p in breakpoints if a < p < b})
    edges = [a] + inner + [b]
    return [(lo, hi) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]


def integrate(func: Callable, a: float, b: float, cfg: QuadratureConfig,
              breakpoints: Sequence[float] = ()) -> QuadratureResult:
    """
    Интеграл функции на [a, b] в r-области

    При заданных точках разрыва интервал делится на сегменты, а на каждом
    сегменте функция вычисляется как односторонний предел (концы сдвигаются
    внутрь на 1e-9 длины сегмента). Допуск распределяется по сегментам
    пропорционально длине. Бюджет max_subdivisions общий для всех
    сегментов.

    Args:
        func: Подынтегральная функция (скалярная или векторная)
        a: Нижний предел
        b: Верхний предел
        cfg: Настройки квадратуры
        breakpoints: Точки разрыва в r-области

    Raises:
        QuadratureBudgetError: Если бюджет панелей исчерпан
    """
    if a == b:
        return QuadratureResult(value=0.0, error=0.0, panels=0)
    if a > b:
        flipped = integrate(func, b, a, cfg, breakpoints)
        return QuadratureResult(value=-flipped.value, error=flipped.error, panels=flipped.panels)

    integrand = VectorizedIntegrand(func)
    segments = _segments(a, b, breakpoints) if breakpoints else [(a, b)]
    total_length = b - a

    values: List[float] = []
    errors: List[float] = []
    panels = 0
    for lo, hi in segments:
        if breakpoints:
            offset = ONE_SIDED_OFFSET * (hi - lo)

            def segment_func(r, lo=lo, hi=hi, offset=offset):
                return integrand(np.clip(np.asarray(r, dtype=float), lo + offset, hi - offset))
        else:
            segment_func = integrand

        if cfg.method is QuadratureMethod.RIEMANN_ORACLE:
            share = max(1, round(cfg.oracle_panels * (hi - lo) / total_length))
            result = midpoint_sum(segment_func, lo, hi, share)
        else:
            tol = cfg.tolerance * (hi - lo) / total_length
            budget = cfg.max_subdivisions - panels
            if budget < 1:
                raise QuadratureBudgetError(math.fsum(values), math.inf, panels)
            try:
                if cfg.method is QuadratureMethod.GAUSS_LEGENDRE_COMPOSITE:
                    result = gauss_legendre_composite(segment_func, lo, hi, tol, budget)
                else:
                    result = adaptive_simpson(segment_func, lo, hi, tol, budget)
            except QuadratureBudgetError as error:
                raise QuadratureBudgetError(
                    math.fsum(values) + error.estimate,
                    math.fsum(errors) + error.error_bound,
                    panels + error.panels,
                ) from error
        values.append(result.value)
        errors.append(result.error)
        panels += result.panels

    logger.debug("Квадратура %s на [%r, %r]: %d сегм., %d панелей",
                 cfg.method.value, a, b, len(segments), panels)
    return QuadratureResult(value=math.fsum(values), error=math.fsum(errors), panels=panels)
