"""
@file: tests/conftest.py
@description: Общие фикстуры тестов: генераторы, контексты, настройки квадратуры
@dependencies: pytest, services
@created: 2025-02-14
"""

import numpy as np
import pytest

from services.arithmetic import ArithmeticContext
from services.generator import identity_generator, paper_generator
from services.quadrature import QuadratureConfig


@pytest.fixture
def paper():
    """sin²/arcsin генератор"""
    return paper_generator()


@pytest.fixture
def identity():
    """Тождественный генератор"""
    return identity_generator()


@pytest.fixture
def ctx(paper):
    return ArithmeticContext(paper)


@pytest.fixture
def identity_ctx(identity):
    return ArithmeticContext(identity)


@pytest.fixture
def cfg():
    """Квадратура по умолчанию: адаптивный Симпсон, допуск 1e-10"""
    return QuadratureConfig()


@pytest.fixture
def rng():
    """Детерминированный источник случайных выборок для тестов"""
    return np.random.default_rng(20250214)
