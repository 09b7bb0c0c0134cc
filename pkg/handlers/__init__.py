"""
@file: handlers/__init__.py
@description: Инициализация пакета обработчиков команд
@dependencies: handlers.*_handlers
@created: 2024-01-15
"""

from .probability_handlers import router as probability_router
from .chsh_handlers import router as chsh_router
from .linearity_handlers import router as linearity_router
from .generator_handlers import router as generator_router
from .mc_handlers import router as mc_router
from .verify_handlers import router as verify_router

__all__ = ['probability_router', 'chsh_router', 'linearity_router', 'generator_router',
           'mc_router', 'verify_router']
