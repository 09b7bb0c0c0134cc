"""
@file: services/generator.py
@description: Генератор f: X → ℝ недиофантовой арифметики и реестр генераторов
@dependencies: math, numpy, utils.errors, utils.constants
@created: 2025-02-10
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple, Union

import numpy as np

from utils.constants import GeneratorNames, RADICAND_SLACK, ROUND_TRIP_TOLERANCE
from utils.errors import (
    GeneratorConstructionError,
    GeneratorDomainError,
    PieceSelectionError,
    UnknownGeneratorError,
)

RealLike = Union[float, np.ndarray]
RealMap = Callable[[RealLike], RealLike]

logger = logging.getLogger(__name__)


def _finite_array(x: RealLike, what: str) -> np.ndarray:
    """Привести аргумент к массиву float и проверить конечность"""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise GeneratorDomainError(f"{what}: аргумент не конечен: {x!r}")
    return arr


def _unwrap(value: np.ndarray) -> RealLike:
    """Скаляр возвращается как float, массив как массив"""
    return float(value) if np.ndim(value) == 0 else value


def _piece_index(arr: np.ndarray) -> np.ndarray:
    """
    Номер куска n с n/2 ≤ x ≤ (n+1)/2

    Это floor(2x), но точные полуцелые относятся к нижнему куску.
    Оба куска совпадают на границе, выбор нужен только для детерминизма.
    """
    return np.ceil(2.0 * arr) - 1.0


def eval_f_inv(x: RealLike) -> RealLike:
    """
    f⁻¹(x) = n/2 + ½·sin²(π(x − n/2)) для n/2 ≤ x ≤ (n+1)/2

    Непрерывна, возрастает и оставляет на месте все k/4.

    Args:
        x: Конечное число или массив

    Returns:
        Значение f⁻¹ той же формы

    Raises:
        GeneratorDomainError: Если аргумент не конечен
    """
    arr = _finite_array(x, "f⁻¹")
    half_n = 0.5 * _piece_index(arr)
    value = half_n + 0.5 * np.sin(np.pi * (arr - half_n)) ** 2
    return _unwrap(value)


def eval_f(x: RealLike) -> RealLike:
    """
    f(x) = n/2 + (1/π)·arcsin√(2x − n), обратная к eval_f_inv

    Подкоренное выражение, вышедшее за [0, 1] не более чем на 1e-12,
    прижимается к отрезку; больший выход означает ошибку выбора куска.

    Raises:
        GeneratorDomainError: Если аргумент не конечен
        PieceSelectionError: Если подкоренное выражение вне [−ε, 1+ε]
    """
    arr = _finite_array(x, "f")
    n = _piece_index(arr)
    radicand = 2.0 * arr - n
    bad = (radicand < -RADICAND_SLACK) | (radicand > 1.0 + RADICAND_SLACK)
    if np.any(bad):
        index = int(np.flatnonzero(np.atleast_1d(bad))[0])
        raise PieceSelectionError(
            float(np.atleast_1d(arr)[index]), float(np.atleast_1d(radicand)[index])
        )
    radicand = np.clip(radicand, 0.0, 1.0)
    value = 0.5 * n + np.arcsin(np.sqrt(radicand)) / np.pi
    return _unwrap(value)


def _identity(x: RealLike) -> RealLike:
    return _unwrap(_finite_array(x, "id"))


@dataclass(frozen=True)
class Generator:
    """
    Биекция f и обратная к ней, задающие деформированную арифметику

    Attributes:
        forward: Отображение f: X → ℝ
        inverse: Отображение f⁻¹: ℝ → X
        name: Имя для отчетов и манифестов
        domain: Отрезок определения в X (границы включительно)
    """

    forward: RealMap
    inverse: RealMap
    name: str
    domain: Tuple[float, float] = (-math.inf, math.inf)

    def round_trip_error(self, x: RealLike) -> float:
        """Максимум |f⁻¹(f(x)) − x| по выборке"""
        arr = np.asarray(x, dtype=float)
        return float(np.max(np.abs(np.asarray(self.inverse(self.forward(arr))) - arr)))

    @classmethod
    def from_functions(
        cls,
        forward: RealMap,
        inverse: RealMap,
        name: str,
        domain: Tuple[float, float] = (-math.inf, math.inf),
        samples: int = 256,
        tolerance: float = ROUND_TRIP_TOLERANCE,
        seed: int = 0,
    ) -> "Generator":
        """
        Создать генератор из пользовательской биекции

        Монотонность и обратимость проверяются на случайной выборке из
        области определения (бесконечные края обрезаются до ±10).

        Raises:
            GeneratorConstructionError: Если выборка не возрастает или
                f⁻¹∘f отличается от тождества больше допуска
        """
        lo, hi = domain
        if not lo < hi:
            raise GeneratorConstructionError(f"Пустая область определения {domain!r}")

        def guarded(func: RealMap, what: str) -> RealMap:
            def wrapper(x: RealLike) -> RealLike:
                arr = _finite_array(x, what)
                return _unwrap(np.asarray(func(arr), dtype=float))
            return wrapper

        def guarded_forward(x: RealLike) -> RealLike:
            arr = _finite_array(x, f"{name}.f")
            if np.any((arr < lo) | (arr > hi)):
                raise GeneratorDomainError(f"{name}: аргумент вне области {domain!r}")
            return _unwrap(np.asarray(forward(arr), dtype=float))

        generator = cls(
            forward=guarded_forward,
            inverse=guarded(inverse, f"{name}.f⁻¹"),
            name=name,
            domain=domain,
        )

        rng = np.random.default_rng(seed)
        xs = np.sort(rng.uniform(max(lo, -10.0), min(hi, 10.0), size=samples))
        images = np.asarray(generator.forward(xs), dtype=float)
        if not np.all(np.diff(images) > 0.0):
            raise GeneratorConstructionError(f"{name}: f не возрастает на выборке")
        error = generator.round_trip_error(xs)
        if not error <= tolerance * max(1.0, float(np.max(np.abs(xs)))):
            raise GeneratorConstructionError(
                f"{name}: |f⁻¹(f(x)) − x| = {error:.3e} превышает допуск {tolerance:.1e}"
            )
        logger.debug("Генератор %s прошел проверку на %d точках", name, samples)
        return generator


def paper_generator() -> Generator:
    """Кусочный sin²/arcsin генератор, биекция ℝ → ℝ"""
    return Generator(forward=eval_f, inverse=eval_f_inv, name=GeneratorNames.PAPER_SIN2)


def identity_generator() -> Generator:
    """Тождественный генератор: вся арифметика и исчисление становятся обычными"""
    return Generator(forward=_identity, inverse=_identity, name=GeneratorNames.IDENTITY)


class GeneratorRegistry:
    """Реестр генераторов по имени (встроенные, псевдонимы, пользовательские)"""

    def __init__(self):
        self._builtins: Dict[str, Callable[[], Generator]] = {
            GeneratorNames.PAPER_SIN2: paper_generator,
            GeneratorNames.IDENTITY: identity_generator,
        }
        self._custom: Dict[str, Generator] = {}
        self._aliases: Dict[str, str] = {}

    def get(self, name: str) -> Generator:
        """
        Получить генератор по имени или псевдониму

        Raises:
            UnknownGeneratorError: Если имя не зарегистрировано
        """
        key = name.strip().lower()
        key = self._aliases.get(key, key)
        if key in self._custom:
            return self._custom[key]
        if key in self._builtins:
            return self._builtins[key]()
        raise UnknownGeneratorError(
            f"Неизвестный генератор '{name}'. Доступны: {', '.join(self.names())}"
        )

    def register(self, generator: Generator) -> None:
        """Зарегистрировать пользовательский генератор под его именем"""
        key = generator.name.strip().lower()
        if key in self._builtins:
            raise GeneratorConstructionError(f"Имя '{generator.name}' занято встроенным генератором")
        self._custom[key] = generator

    def register_alias(self, alias: str, target: str) -> None:
        """Зарегистрировать псевдоним встроенного генератора"""
        target_key = target.strip().lower()
        if target_key not in self._builtins:
            raise UnknownGeneratorError(
                f"Псевдоним '{alias}' ссылается на неизвестный генератор '{target}'"
            )
        self._aliases[alias.strip().lower()] = target_key
        logger.debug("Псевдоним генератора %s → %s", alias, target_key)

    def clear_aliases(self) -> None:
        self._aliases.clear()

    def names(self) -> List[str]:
        return sorted(set(self._builtins) | set(self._custom) | set(self._aliases))


# Глобальный реестр генераторов
generator_registry = GeneratorRegistry()
