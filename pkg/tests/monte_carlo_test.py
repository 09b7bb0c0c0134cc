"""
@file: tests/monte_carlo_test.py
@description: Тесты разбиения выборки, потоков PCG64 и настроек McConfig
@dependencies: pytest, numpy, pydantic, services.monte_carlo
@created: 2025-02-14
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from services.monte_carlo import (
    McConfig,
    binomial_sigma,
    count_uniform,
    partition_sizes,
    partition_streams,
)


def below_half(r: np.ndarray) -> np.ndarray:
    """Счетчики [r < 0.5, r ≥ 0.5]"""
    low = int(np.count_nonzero(r < 0.5))
    return np.array([low, r.size - low], dtype=np.int64)


class TestPartitions:
    """Детерминированное разбиение объема выборки"""

    @pytest.mark.parametrize("samples, partitions, expected", [
        (10, 3, [4, 3, 3]),
        (9, 3, [3, 3, 3]),
        (2, 4, [1, 1, 0, 0]),
        (1, 1, [1]),
    ])
    def test_partition_sizes(self, samples, partitions, expected):
        assert partition_sizes(samples, partitions) == expected
        assert sum(partition_sizes(samples, partitions)) == samples

    def test_streams_are_reproducible(self):
        first = [rng.uniform(size=3) for rng in partition_streams(42, 3)]
        second = [rng.uniform(size=3) for rng in partition_streams(42, 3)]
        for a, b in zip(first, second):
            assert np.array_equal(a, b), "Потоки с одним seed должны совпадать"
        assert not np.array_equal(first[0], first[1]), "Потоки должны быть независимыми"


class TestCountUniform:
    """Суммирование счетчиков по потокам"""

    def test_counts_cover_all_samples(self):
        counts = count_uniform(McConfig(samples=10_001, seed=5, partitions=3), 0.0, 1.0, below_half)
        assert int(counts.sum()) == 10_001

    def test_deterministic_for_fixed_seed(self):
        mc = McConfig(samples=20_000, seed=123, partitions=2)
        first = count_uniform(mc, 0.0, 1.0, below_half)
        second = count_uniform(mc, 0.0, 1.0, below_half)
        assert np.array_equal(first, second), "Одинаковый seed должен давать одинаковые счетчики"

    def test_seed_changes_sample(self):
        first = count_uniform(McConfig(samples=20_000, seed=1), 0.0, 1.0, below_half)
        second = count_uniform(McConfig(samples=20_000, seed=2), 0.0, 1.0, below_half)
        assert not np.array_equal(first, second)

    def test_workers_do_not_change_result(self):
        serial = count_uniform(McConfig(samples=30_000, seed=9, partitions=4), 0.0, 1.0, below_half)
        pooled = count_uniform(McConfig(samples=30_000, seed=9, partitions=4, workers=3), 0.0, 1.0, below_half)
        assert np.array_equal(serial, pooled)

    def test_frequency_close_to_half(self):
        samples = 100_000
        counts = count_uniform(McConfig(samples=samples, seed=42), 0.0, 1.0, below_half)
        assert abs(counts[0] / samples - 0.5) <= 5.0 * binomial_sigma(0.5, samples)


class TestMcConfig:
    """Проверка настроек pydantic"""

    def test_defaults(self):
        mc = McConfig(samples=10)
        assert (mc.seed, mc.partitions, mc.workers) == (42, 1, 1)

    @pytest.mark.parametrize("kwargs", [
        {"samples": 0},
        {"samples": 10, "seed": -1},
        {"samples": 10, "seed": 1 << 64},
        {"samples": 10, "partitions": 0},
        {"samples": 10, "workers": 0},
    ])
    def test_invalid_values_rejected(self, kwargs):
        with pytest.raises(ValidationError):
            McConfig(**kwargs)

    def test_binomial_sigma(self):
        assert binomial_sigma(0.25, 10 ** 6) == pytest.approx(math.sqrt(0.1875) / 1000.0)
        assert binomial_sigma(0.0, 100) == 0.0
        assert binomial_sigma(1.2, 100) == 0.0, "p вне [0, 1] прижимается к отрезку"
