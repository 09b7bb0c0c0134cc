"""
@file: services/bell_model.py
@description: Модель скрытых параметров синглетного состояния: плотность, окна детекторов, вероятности, CHSH, Монте-Карло
@dependencies: math, enum, numpy, services.generator, services.arithmetic, services.calculus, services.monte_carlo
@created: 2025-02-12
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from services.arithmetic import ArithmeticContext, mul
from services.calculus import NNFunction, NNIntegral, nn_integral, nn_integral_result
from services.generator import Generator, RealLike
from services.monte_carlo import McConfig, binomial_sigma, count_uniform
from services.quadrature import QuadratureConfig
from utils.constants import MC_SIGMA_MULTIPLIER, TWO_PI
from utils.errors import GeneratorDomainError

logger = logging.getLogger(__name__)

# Допуск на проверку 0 ≤ β − α ≤ π
ANGLE_SLACK = 1e-12


class Party(IntEnum):
    """Наблюдатель: 1 (угол α) или 2 (угол β)"""

    FIRST = 1
    SECOND = 2


class Sign(str, Enum):
    """Исход измерения спина"""

    PLUS = "+"
    MINUS = "-"


class Outcome(str, Enum):
    """Совместный исход двух наблюдателей"""

    PP = "++"
    PM = "+-"
    MP = "-+"
    MM = "--"

    @property
    def signs(self) -> Tuple[Sign, Sign]:
        return Sign(self.value[0]), Sign(self.value[1])

    @classmethod
    def parse(cls, value: Union[str, "Outcome"]) -> "Outcome":
        """Разобрать '++', '+-', '−+' (с типографским минусом) или 'pm'"""
        if isinstance(value, Outcome):
            return value
        text = str(value).strip().lower().replace("−", "-").replace("p", "+").replace("m", "-")
        try:
            return cls(text)
        except ValueError:
            raise GeneratorDomainError(f"Неизвестный исход '{value}'") from None


# Начало окна относительно угла детектора
_WINDOW_OFFSETS = {
    (Party.FIRST, Sign.PLUS): 0.0,
    (Party.FIRST, Sign.MINUS): math.pi,
    (Party.SECOND, Sign.PLUS): -math.pi,
    (Party.SECOND, Sign.MINUS): 0.0,
}


@dataclass(frozen=True)
class DetectorWindow:
    """
    Полуокружность [lo_r, hi_r) в r-области, где детектор дает знак sign

    Окно в X: [f⁻¹(lo_r), f⁻¹(hi_r)) с переходом через 2π.
    """

    lo_r: float
    hi_r: float
    party: Party
    sign: Sign
    angle: float

    def contains_r(self, r: RealLike) -> Union[bool, np.ndarray]:
        """Лежит ли r (по модулю 2π) в дуге"""
        return np.mod(np.asarray(r, dtype=float) - self.lo_r, TWO_PI) < (self.hi_r - self.lo_r)

    def edges(self) -> Tuple[float, float]:
        """Концы дуги, приведенные к [0, 2π)"""
        return self.lo_r, self.hi_r % TWO_PI


@dataclass(frozen=True)
class JointProbabilities:
    """Четыре совместные вероятности при углах (α, β)"""

    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float
    alpha: float
    beta: float

    def get(self, outcome: Union[str, Outcome]) -> float:
        return {
            Outcome.PP: self.p_pp,
            Outcome.PM: self.p_pm,
            Outcome.MP: self.p_mp,
            Outcome.MM: self.p_mm,
        }[Outcome.parse(outcome)]

    @property
    def total(self) -> float:
        return math.fsum((self.p_pp, self.p_pm, self.p_mp, self.p_mm))

    @property
    def correlator(self) -> float:
        return self.p_pp + self.p_mm - self.p_pm - self.p_mp


@dataclass(frozen=True)
class ChshResult:
    """Корреляторы E(a,b), E(a,b′), E(a′,b), E(a′,b′) и S = |E₁ − E₂ + E₃ + E₄|"""

    settings: Tuple[float, float, float, float]
    correlators: Tuple[float, float, float, float]
    s_value: float


@dataclass(frozen=True)
class ClauserHorneResult:
    """
    Комбинация Клаузера–Хорна

    CH = P₊₊(a,b) − P₊₊(a,b′) + P₊₊(a′,b) + P₊₊(a′,b′) − P¹₊(a′) − P²₊(b);
    для классических локальных моделей −1 ≤ CH ≤ 0.
    """

    settings: Tuple[float, float, float, float]
    joint_plus: Tuple[float, float, float, float]
    marginal_first: float
    marginal_second: float
    ch_value: float

    @property
    def violates_bounds(self) -> bool:
        return not -1.0 <= self.ch_value <= 0.0


def _normalize_angle(angle: float) -> float:
    value = float(angle) % TWO_PI
    return 0.0 if value >= TWO_PI else value


def reduce_angles(alpha: float, beta: float) -> Tuple[float, float]:
    """
    Привести пару углов к 0 ≤ β − α ≤ π

    Используются 2π-периодичность и четность по β − α; α не меняется.
    """
    d = _normalize_angle(beta - alpha)
    if d > math.pi:
        d = TWO_PI - d
    return float(alpha), float(alpha) + d


def density_value(gen: Generator) -> float:
    """Постоянная плотность ρ = f⁻¹(1/(2π)); для paper-sin2 ≈ 0.114924"""
    return gen.inverse(1.0 / TWO_PI)


def density(gen: Generator):
    """Функция ρ(λ), постоянная на X"""
    rho = density_value(gen)

    def rho_of(lam: RealLike) -> RealLike:
        return np.full(np.shape(lam), rho) if np.ndim(lam) else rho

    return rho_of


def arc_probability(gen: Generator, alpha: float, beta: float,
                    cfg: Optional[QuadratureConfig] = None) -> float:
    """
    ∫_{α′}^{β′} ρ(x) Dx для 0 ≤ β − α ≤ π

    Равен f⁻¹((β − α)/2π), для paper-sin2 это ½·sin²((β − α)/2).

    Raises:
        GeneratorDomainError: Если β − α вне [0, π]
    """
    d = beta - alpha
    if not -ANGLE_SLACK <= d <= math.pi + ANGLE_SLACK:
        raise GeneratorDomainError(f"Требуется 0 ≤ β − α ≤ π, получено β − α = {d!r}")
    return nn_integral(gen, density(gen), gen.inverse(alpha), gen.inverse(beta), cfg)


def window(party: Union[int, Party], sign: Union[str, Sign], angle: float) -> DetectorWindow:
    """
    Окно детектора в r-области

    1+: [α, α+π), 1−: [α+π, α+2π), 2+: [β−π, β), 2−: [β, β+π), все по модулю 2π.
    Попарные пересечения дают пределы интегрирования совместных вероятностей.
    """
    party, sign = Party(int(party)), Sign(sign)
    lo = _normalize_angle(angle + _WINDOW_OFFSETS[(party, sign)])
    return DetectorWindow(lo_r=lo, hi_r=lo + math.pi, party=party, sign=sign, angle=float(angle))


def window_indicator(gen: Generator, w: DetectorWindow, lam: RealLike) -> RealLike:
    """
    Характеристическая функция окна: 1, если f(λ) mod 2π лежит в дуге, иначе 0

    0 и 1 - неподвижные точки f, поэтому ⊙-умножение на индикатор
    маскирует так же, как обычное.
    """
    inside = w.contains_r(gen.forward(lam))
    if np.ndim(inside):
        return np.where(inside, 1.0, 0.0)
    return 1.0 if inside else 0.0


def outcome_for(gen: Generator, party: Union[int, Party], angle: float, lam: RealLike):
    """
    Детерминированный локальный исход наблюдателя

    Зависит только от λ и собственного угла наблюдателя.
    """
    plus = window_indicator(gen, window(party, Sign.PLUS, angle), lam)
    if np.ndim(plus):
        return np.where(plus == 1.0, Sign.PLUS.value, Sign.MINUS.value)
    return Sign.PLUS if plus == 1.0 else Sign.MINUS


def _window_breakpoints(windows: List[DetectorWindow]) -> List[float]:
    """Концы окон внутри (0, 2π) в r-области"""
    return sorted({edge for w in windows for edge in w.edges() if 0.0 < edge < TWO_PI})


def _circle_integrand(gen: Generator, windows: List[DetectorWindow]) -> NNFunction:
    """
    Пара (χ₁ ⊙ … ⊙ χₖ ⊙ ρ, ее сопряженная)

    0 и 1 неподвижны при f, поэтому ã(r) = χ₁(r)·…·χₖ(r)·f(ρ) = χ(r)/2π.
    Индикаторы ã проверяются прямо по r: у полуцелых f⁻¹ плоская, и
    f(f⁻¹(r)) сносит r через край окна.
    """
    ctx = ArithmeticContext(gen)
    rho = density_value(gen)

    def integrand(lam: RealLike) -> RealLike:
        product = rho
        for w in windows:
            product = mul(ctx, window_indicator(gen, w, lam), product)
        return product

    def integrand_r(r: RealLike) -> RealLike:
        inside = np.ones(np.shape(r), dtype=bool)
        for w in windows:
            inside = inside & w.contains_r(r)
        value = np.where(inside, 1.0 / TWO_PI, 0.0)
        return value if np.ndim(value) else float(value)

    return NNFunction(apply=integrand, conjugate=integrand_r)


def _circle_integral(gen: Generator, windows: List[DetectorWindow],
                     cfg: Optional[QuadratureConfig]) -> NNIntegral:
    """∫₀^{(2π)′} χ₁ ⊙ … ⊙ χₖ ⊙ ρ Dλ с разбиением по концам окон"""
    return nn_integral_result(gen, _circle_integrand(gen, windows), 0.0, gen.inverse(TWO_PI), cfg,
                              r_breakpoints=_window_breakpoints(windows))


def joint_probability_result(gen: Generator, outcome: Union[str, Outcome], alpha: float,
                             beta: float, cfg: Optional[QuadratureConfig] = None) -> NNIntegral:
    """
    Совместная вероятность ∫₀^{(2π)′} χ¹ ⊙ χ² ⊙ ρ Dλ с образом в r-области

    Углы сначала приводятся к 0 ≤ β − α ≤ π. Для paper-sin2 результат
    совпадает с ½·sin²((β−α)/2) для ++/−− и ½·cos²((β−α)/2) для +−/−+.

    Raises:
        QuadratureBudgetError: Если бюджет панелей исчерпан
    """
    outcome = Outcome.parse(outcome)
    alpha, beta = reduce_angles(alpha, beta)
    first, second = outcome.signs
    windows = [window(Party.FIRST, first, alpha), window(Party.SECOND, second, beta)]
    return _circle_integral(gen, windows, cfg)


def joint_probability(gen: Generator, outcome: Union[str, Outcome], alpha: float, beta: float,
                      cfg: Optional[QuadratureConfig] = None) -> float:
    """Совместная вероятность исхода (значение в X)"""
    return joint_probability_result(gen, outcome, alpha, beta, cfg).value


def joint_probabilities(gen: Generator, alpha: float, beta: float,
                        cfg: Optional[QuadratureConfig] = None) -> JointProbabilities:
    """Все четыре совместные вероятности при (α, β)"""
    values = {o: joint_probability(gen, o, alpha, beta, cfg) for o in Outcome}
    return JointProbabilities(
        p_pp=values[Outcome.PP], p_pm=values[Outcome.PM],
        p_mp=values[Outcome.MP], p_mm=values[Outcome.MM],
        alpha=float(alpha), beta=float(beta),
    )


def joint_probability_closed(outcome: Union[str, Outcome], alpha: float, beta: float) -> float:
    """Тригонометрическая замкнутая форма, не зависящая от генератора"""
    half = 0.5 * (beta - alpha)
    if Outcome.parse(outcome) in (Outcome.PP, Outcome.MM):
        return 0.5 * math.sin(half) ** 2
    return 0.5 * math.cos(half) ** 2


def overlap_fraction(outcome: Union[str, Outcome], alpha: float, beta: float) -> float:
    """
    Доля окружности, на которой реализуется исход: длина пересечения окон / 2π

    Это относительная частота исхода в r-области при любом генераторе.
    """
    first, second = Outcome.parse(outcome).signs
    w1, w2 = window(Party.FIRST, first, alpha), window(Party.SECOND, second, beta)
    shift = (w2.lo_r - w1.lo_r) % TWO_PI
    return abs(math.pi - shift) / TWO_PI


def reference_probability(gen: Generator, outcome: Union[str, Outcome],
                          alpha: float, beta: float) -> float:
    """f⁻¹(доля пересечения); для paper-sin2 равна замкнутой форме"""
    return gen.inverse(overlap_fraction(outcome, alpha, beta))


def marginal_probability(gen: Generator, party: Union[int, Party], sign: Union[str, Sign],
                         angle: float, cfg: Optional[QuadratureConfig] = None) -> float:
    """Маргинальная вероятность ∫₀^{(2π)′} χ ⊙ ρ Dλ одного наблюдателя (равна f⁻¹(½))"""
    return _circle_integral(gen, [window(party, sign, angle)], cfg).value


def correlator(gen: Generator, alpha: float, beta: float,
               cfg: Optional[QuadratureConfig] = None) -> float:
    """E(α, β) = P₊₊ + P₋₋ − P₊₋ − P₋₊; для paper-sin2 равен −cos(β − α)"""
    return joint_probabilities(gen, alpha, beta, cfg).correlator


def chsh(gen: Generator, a: float, a_prime: float, b: float, b_prime: float,
         cfg: Optional[QuadratureConfig] = None) -> ChshResult:
    """S = |E(a,b) − E(a,b′) + E(a′,b) + E(a′,b′)| по интегральным корреляторам"""
    correlators = (
        correlator(gen, a, b, cfg),
        correlator(gen, a, b_prime, cfg),
        correlator(gen, a_prime, b, cfg),
        correlator(gen, a_prime, b_prime, cfg),
    )
    e1, e2, e3, e4 = correlators
    s_value = abs(e1 - e2 + e3 + e4)
    logger.debug("CHSH при %r: S=%r", (a, a_prime, b, b_prime), s_value)
    return ChshResult(settings=(a, a_prime, b, b_prime), correlators=correlators, s_value=s_value)


def clauser_horne(gen: Generator, a: float, a_prime: float, b: float, b_prime: float,
                  cfg: Optional[QuadratureConfig] = None) -> ClauserHorneResult:
    """Комбинация Клаузера–Хорна по интегральным вероятностям ++ и маргиналам"""
    joint_plus = (
        joint_probability(gen, Outcome.PP, a, b, cfg),
        joint_probability(gen, Outcome.PP, a, b_prime, cfg),
        joint_probability(gen, Outcome.PP, a_prime, b, cfg),
        joint_probability(gen, Outcome.PP, a_prime, b_prime, cfg),
    )
    marginal_first = marginal_probability(gen, Party.FIRST, Sign.PLUS, a_prime, cfg)
    marginal_second = marginal_probability(gen, Party.SECOND, Sign.PLUS, b, cfg)
    p1, p2, p3, p4 = joint_plus
    ch_value = p1 - p2 + p3 + p4 - marginal_first - marginal_second
    return ClauserHorneResult(
        settings=(a, a_prime, b, b_prime),
        joint_plus=joint_plus,
        marginal_first=marginal_first,
        marginal_second=marginal_second,
        ch_value=ch_value,
    )


def mc_counts(gen: Generator, alpha: float, beta: float, mc: McConfig) -> Dict[Outcome, int]:
    """
    Частоты четырех исходов по одной выборке r ~ U[0, 2π), λ = f⁻¹(r)

    Исход каждого наблюдателя определяется только его окном.
    """
    order = list(Outcome)

    def kernel(r: np.ndarray) -> np.ndarray:
        lam = gen.inverse(r)
        first = window_indicator(gen, window(Party.FIRST, Sign.PLUS, alpha), lam) == 1.0
        second = window_indicator(gen, window(Party.SECOND, Sign.PLUS, beta), lam) == 1.0
        masks = {
            Outcome.PP: first & second,
            Outcome.PM: first & ~second,
            Outcome.MP: ~first & second,
            Outcome.MM: ~first & ~second,
        }
        return np.array([np.count_nonzero(masks[o]) for o in order], dtype=np.int64)

    counts = count_uniform(mc, 0.0, TWO_PI, kernel)
    return {o: int(c) for o, c in zip(order, counts)}


def mc_estimate(gen: Generator, outcome: Union[str, Outcome], alpha: float, beta: float,
                mc: McConfig) -> float:
    """f⁻¹ относительной частоты исхода; детерминирована при фиксированном seed"""
    counts = mc_counts(gen, alpha, beta, mc)
    return gen.inverse(counts[Outcome.parse(outcome)] / mc.samples)


def mc_sigma_bound(gen: Generator, outcome: Union[str, Outcome], alpha: float, beta: float,
                   samples: int, k: float = MC_SIGMA_MULTIPLIER) -> float:
    """
    kσ-граница отклонения f⁻¹(частоты) от f⁻¹(p)

    σ = √(p(1−p)/N) переносится через f⁻¹ как интервал:
    max |f⁻¹(p ± kσ) − f⁻¹(p)|. В первом порядке это наклон f⁻¹ · kσ.
    """
    p = overlap_fraction(outcome, alpha, beta)
    spread = k * binomial_sigma(p, samples)
    center = gen.inverse(p)
    return max(abs(gen.inverse(p + spread) - center), abs(gen.inverse(p - spread) - center))
