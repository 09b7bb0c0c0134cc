"""
@file: services/calculus.py
@description: Неньютоновское исчисление: сопряжение ã = f∘a∘f⁻¹, производная, интеграл, оракул Римана
@dependencies: math, numpy, services.generator, services.arithmetic, services.quadrature, utils.logger
@created: 2025-02-11
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional, Sequence, Union

import numpy as np

from services.arithmetic import ArithmeticContext, add, compare, div, mul, sub, Ordering
from services.generator import Generator, RealLike, RealMap
from services.quadrature import (
    RIEMANN_CHUNK,
    QuadratureConfig,
    QuadratureMethod,
    VectorizedIntegrand,
    integrate,
)
from utils.errors import DifferentiationError, GeneratorDomainError
from utils.logger import engine_logger

logger = logging.getLogger(__name__)

# Начальный шаг и число уровней экстраполяции Ричардсона
DERIVATIVE_STEP = 1e-4
RICHARDSON_LEVELS = 4

# Последовательность δ по умолчанию для предела в определении производной
DEFAULT_DELTAS = tuple(1e-2 * 2.0 ** -k for k in range(21))

# Порядок полиномиальной экстраполяции частных к δ → 0
LIMIT_EXTRAPOLATION_ORDER = 2

# Относительный разброс соседних экстраполяций, выше которого предел расходится
LIMIT_DIVERGENCE_THRESHOLD = 1e-3


@dataclass(frozen=True)
class NNFunction:
    """
    Функция a: X → X вместе с сопряженной ã = f∘a∘f⁻¹

    Сопряженная строится, а не задается пользователем; диаграмма
    f(a(x)) = ã(f(x)) коммутирует по построению.
    """

    apply: RealMap
    conjugate: RealMap

    def __call__(self, x: RealLike) -> RealLike:
        return self.apply(x)


class NNIntegral(NamedTuple):
    """Значение интеграла в X и его образ в r-области"""

    value: float
    r_value: float
    r_error: float
    panels: int


class LinearityGap(NamedTuple):
    """Нарушение обычной линейности и деформированной линейности интеграла"""

    gap_ordinary: float
    gap_deformed: float


NNLike = Union[NNFunction, Callable[[RealLike], RealLike]]


def conjugate(gen: Generator, a: NNLike) -> NNFunction:
    """
    Построить пару (a, ã) с ã(r) = f(a(f⁻¹(r)))

    Готовая пара NNFunction возвращается как есть: ее ã может быть задана
    прямо в r-области, без прохода через плоские участки f⁻¹.
    """
    if isinstance(a, NNFunction):
        return a
    apply = a

    def tilde(r: RealLike) -> RealLike:
        return gen.forward(apply(gen.inverse(r)))

    return NNFunction(apply=apply, conjugate=tilde)


def nn_derivative(gen: Generator, a: NNLike, x: float,
                  step: float = DERIVATIVE_STEP,
                  levels: int = RICHARDSON_LEVELS) -> float:
    """
    Производная Da/Dx = f⁻¹(dã/dr при r = f(x))

    dã/dr считается центральной разностью с экстраполяцией Ричардсона
    (шаги step, step/2, ...). Вблизи полуцелых точек f точность падает.

    Raises:
        DifferentiationError: Если результат не конечен
    """
    tilde = conjugate(gen, a).conjugate
    r = gen.forward(x)

    table: List[List[float]] = []
    h = step
    for k in range(levels):
        row = [(tilde(r + h) - tilde(r - h)) / (2.0 * h)]
        for j in range(1, k + 1):
            factor = 4.0 ** j
            row.append(row[j - 1] + (row[j - 1] - table[k - 1][j - 1]) / (factor - 1.0))
        table.append(row)
        h *= 0.5

    value = table[-1][-1]
    if not math.isfinite(value):
        raise DifferentiationError(f"Производная в x={x!r} не конечна")
    return gen.inverse(value)


def _extrapolate_to_zero(hs: Sequence[float], qs: Sequence[float]) -> float:
    """Значение интерполяционного полинома в нуле (форма Лагранжа)"""
    total = 0.0
    for i, (h_i, q_i) in enumerate(zip(hs, qs)):
        weight = 1.0
        for j, h_j in enumerate(hs):
            if j != i:
                weight *= h_j / (h_j - h_i)
        total += weight * q_i
    return total


def nn_derivative_limit(gen: Generator, a: NNLike, x: float,
                        deltas: Optional[Sequence[float]] = None) -> float:
    """
    Производная по определению: предел (a(x ⊕ δ) ⊖ a(x)) ⊘ δ при δ → 0

    Частные вычисляются буквально в деформированной арифметике и
    экстраполируются к нулю по образу шага f(δ); из соседних экстраполяций
    выбирается пара с наименьшим расхождением.

    Raises:
        DifferentiationError: Если δ не убывают, частные не конечны или
            последовательность экстраполяций расходится
    """
    deltas = tuple(DEFAULT_DELTAS if deltas is None else deltas)
    order = LIMIT_EXTRAPOLATION_ORDER
    if len(deltas) < order + 2:
        raise DifferentiationError(f"Нужно не меньше {order + 2} значений δ")
    if any(d <= 0.0 for d in deltas) or any(d1 <= d2 for d1, d2 in zip(deltas, deltas[1:])):
        raise DifferentiationError("Последовательность δ должна быть положительной и убывающей")

    apply = a.apply if isinstance(a, NNFunction) else a
    ctx = ArithmeticContext(gen)
    base = apply(x)
    quotients = [div(ctx, sub(ctx, apply(add(ctx, x, d)), base), d) for d in deltas]
    steps = [gen.forward(d) for d in deltas]
    if not all(math.isfinite(q) for q in quotients):
        raise DifferentiationError(f"Неконечное разностное частное в x={x!r}")

    estimates = [
        _extrapolate_to_zero(steps[k - order:k + 1], quotients[k - order:k + 1])
        for k in range(order, len(deltas))
    ]
    spreads = [abs(e2 - e1) for e1, e2 in zip(estimates, estimates[1:])]
    best = min(range(len(spreads)), key=spreads.__getitem__)
    value = estimates[best + 1]
    if not math.isfinite(value) or spreads[best] > LIMIT_DIVERGENCE_THRESHOLD * max(1.0, abs(value)):
        raise DifferentiationError(
            f"Разностные частные в x={x!r} не сходятся (разброс {spreads[best]:.3e})"
        )
    return value


def nn_integral_result(gen: Generator, a: NNLike, x1: float, x2: float,
                       cfg: Optional[QuadratureConfig] = None,
                       breakpoints: Sequence[float] = (),
                       r_breakpoints: Sequence[float] = ()) -> NNIntegral:
    """
    Интеграл ∫_{x1}^{x2} a(x) Dx = f⁻¹(∫_{f(x1)}^{f(x2)} ã(r) dr) с подробностями

    Args:
        gen: Генератор
        a: Подынтегральная функция X → X
        x1: Нижний предел (x1 ≤ x2)
        x2: Верхний предел
        cfg: Настройки квадратуры
        breakpoints: Точки разрыва в X; ã считается непрерывной между ними
        r_breakpoints: Точки разрыва, заданные сразу в r-области

    Raises:
        GeneratorDomainError: Если x1 > x2
        QuadratureBudgetError: Если бюджет панелей исчерпан
    """
    cfg = cfg or QuadratureConfig()
    if compare(ArithmeticContext(gen), x1, x2) is Ordering.GREATER:
        raise GeneratorDomainError(f"Нижний предел больше верхнего: {x1!r} > {x2!r}")

    if cfg.method is QuadratureMethod.RIEMANN_ORACLE:
        value = nn_integral_oracle(gen, a, x1, x2, cfg)
        return NNIntegral(value=value, r_value=gen.forward(value), r_error=math.nan,
                          panels=cfg.oracle_panels)

    tilde = conjugate(gen, a).conjugate
    r_breaks = [float(gen.forward(p)) for p in breakpoints] + [float(p) for p in r_breakpoints]
    result = integrate(tilde, gen.forward(x1), gen.forward(x2), cfg, r_breaks)
    engine_logger.log_quadrature(cfg.method.value, result.panels, result.error)
    return NNIntegral(value=gen.inverse(result.value), r_value=result.value,
                      r_error=result.error, panels=result.panels)


def nn_integral(gen: Generator, a: NNLike, x1: float, x2: float,
                cfg: Optional[QuadratureConfig] = None,
                breakpoints: Sequence[float] = (),
                r_breakpoints: Sequence[float] = ()) -> float:
    """Неньютоновский интеграл a по [x1, x2] (значение в X)"""
    return nn_integral_result(gen, a, x1, x2, cfg, breakpoints, r_breakpoints).value


def nn_integral_oracle(gen: Generator, a: NNLike, x1: float, x2: float,
                       cfg: Optional[QuadratureConfig] = None,
                       panels: Optional[int] = None) -> float:
    """
    Деформированная сумма Римана ⊕ᵢ a(ξᵢ) ⊙ (xᵢ₊₁ ⊖ xᵢ)

    Разбиение равномерно в r-области, ξᵢ - прообраз середины панели.
    ⊕-свертка накапливается по образам f(слагаемых) через math.fsum.

    Args:
        panels: Число панелей (по умолчанию cfg.oracle_panels)

    Raises:
        ValueError: Если panels < 1
    """
    cfg = cfg or QuadratureConfig()
    count = cfg.oracle_panels if panels is None else int(panels)
    if count < 1:
        raise ValueError(f"Число панелей должно быть положительным: {count}")

    ctx = ArithmeticContext(gen)
    integrand = VectorizedIntegrand(a.apply if isinstance(a, NNFunction) else a)
    r1, r2 = float(gen.forward(x1)), float(gen.forward(x2))
    width = (r2 - r1) / count

    partial: List[float] = []
    for start in range(0, count, RIEMANN_CHUNK):
        stop = min(start + RIEMANN_CHUNK, count)
        r_edges = r1 + np.arange(start, stop + 1, dtype=float) * width
        if stop == count:
            r_edges[-1] = r2
        x_edges = np.atleast_1d(gen.inverse(r_edges))
        xi = np.atleast_1d(gen.inverse(0.5 * (r_edges[:-1] + r_edges[1:])))
        widths = np.atleast_1d(sub(ctx, x_edges[1:], x_edges[:-1]))
        terms = np.atleast_1d(mul(ctx, integrand(xi), widths))
        partial.append(float(np.sum(np.asarray(gen.forward(terms), dtype=float))))

    total = math.fsum(partial)
    if not math.isfinite(total):
        raise GeneratorDomainError("Неконечная сумма в оракуле Римана")
    logger.debug("Оракул Римана: %d панелей, образ суммы %r", count, total)
    return gen.inverse(total)


def linearity_gap(gen: Generator, a: NNLike, b: NNLike, x1: float, x2: float,
                  cfg: Optional[QuadratureConfig] = None,
                  breakpoints: Sequence[float] = ()) -> LinearityGap:
    """
    Проверка линейности интеграла в обычном и деформированном смысле

    gap_ordinary = |∫(a + b) − (∫a + ∫b)| с обычным сложением;
    gap_deformed = |f(∫(a ⊕ b)) − f(∫a ⊕ ∫b)|. Второй зазор всегда на уровне
    погрешности квадратуры, первый ненулевой для нелинейного f.
    """
    ctx = ArithmeticContext(gen)
    apply_a = a.apply if isinstance(a, NNFunction) else a
    apply_b = b.apply if isinstance(b, NNFunction) else b

    int_a = nn_integral(gen, apply_a, x1, x2, cfg, breakpoints)
    int_b = nn_integral(gen, apply_b, x1, x2, cfg, breakpoints)

    ordinary_lhs = nn_integral(gen, lambda x: np.add(apply_a(x), apply_b(x)), x1, x2, cfg, breakpoints)
    gap_ordinary = abs(ordinary_lhs - (int_a + int_b))

    deformed_lhs = nn_integral(gen, lambda x: add(ctx, apply_a(x), apply_b(x)), x1, x2, cfg, breakpoints)
    deformed_rhs = add(ctx, int_a, int_b)
    gap_deformed = abs(gen.forward(deformed_lhs) - gen.forward(deformed_rhs))

    return LinearityGap(gap_ordinary=gap_ordinary, gap_deformed=gap_deformed)
