"""
@file: services/__init__.py
@description: Инициализация пакета сервисов
@dependencies: services.generator, services.arithmetic, services.calculus, services.bell_model
@created: 2024-01-15
"""

from .generator import Generator, generator_registry, identity_generator, paper_generator
from .arithmetic import ArithmeticContext
from .calculus import NNFunction
from .quadrature import QuadratureConfig, QuadratureMethod
from .monte_carlo import McConfig

__all__ = ['Generator', 'generator_registry', 'identity_generator', 'paper_generator',
           'ArithmeticContext', 'NNFunction', 'QuadratureConfig', 'QuadratureMethod', 'McConfig']
