"""
@file: services/monte_carlo.py
@description: Воспроизводимая выборка Монте-Карло с разбиением на независимые потоки
@dependencies: math, concurrent.futures, numpy, pydantic
@created: 2025-02-12
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

# Размер блока выборки внутри одного потока
SAMPLE_CHUNK = 1 << 20

CountKernel = Callable[[np.ndarray], np.ndarray]


class McConfig(BaseModel):
    """
    Настройки выборки

    Attributes:
        samples: Общее число испытаний
        seed: 64-битное зерно
        partitions: Число независимых потоков (результат зависит от него)
        workers: Число рабочих потоков (на результат не влияет)
    """

    model_config = ConfigDict(frozen=True)

    samples: int = Field(ge=1)
    seed: int = Field(default=42, ge=0, lt=1 << 64)
    partitions: int = Field(default=1, ge=1)
    workers: int = Field(default=1, ge=1)


def partition_sizes(samples: int, partitions: int) -> List[int]:
    """Разбить samples на partitions почти равных частей (первые получают остаток)"""
    base, extra = divmod(samples, partitions)
    return [base + (1 if i < extra else 0) for i in range(partitions)]


def partition_streams(seed: int, partitions: int) -> List[np.random.Generator]:
    """Независимые потоки PCG64, порожденные SeedSequence(seed).spawn(partitions)"""
    children = np.random.SeedSequence(seed).spawn(partitions)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def count_uniform(mc: McConfig, low: float, high: float, kernel: CountKernel) -> np.ndarray:
    """
    Выборка r ~ U[low, high) и суммирование векторов счетчиков

    kernel получает блок выборки и возвращает вектор целых счетчиков.
    Потоки могут обрабатываться параллельно; счетчики складываются
    по потокам, поэтому результат определяется (seed, samples, partitions).
    """
    sizes = partition_sizes(mc.samples, mc.partitions)
    streams = partition_streams(mc.seed, mc.partitions)

    def run(index: int) -> np.ndarray:
        rng, remaining = streams[index], sizes[index]
        total = None
        while remaining > 0:
            block = min(remaining, SAMPLE_CHUNK)
            counts = np.asarray(kernel(rng.uniform(low, high, size=block)), dtype=np.int64)
            total = counts if total is None else total + counts
            remaining -= block
        return total

    if mc.workers > 1 and mc.partitions > 1:
        with ThreadPoolExecutor(max_workers=mc.workers) as pool:
            results = list(pool.map(run, range(mc.partitions)))
    else:
        results = [run(i) for i in range(mc.partitions)]

    results = [r for r in results if r is not None]
    logger.debug("Монте-Карло: %d испытаний, %d потоков, seed=%d",
                 mc.samples, mc.partitions, mc.seed)
    return np.sum(results, axis=0)


def binomial_sigma(p: float, samples: int) -> float:
    """Стандартная ошибка относительной частоты: √(p(1 − p)/N)"""
    p = min(max(p, 0.0), 1.0)
    return math.sqrt(p * (1.0 - p) / samples)
