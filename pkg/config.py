"""
@file: config.py
@description: Конфигурация движка: секции-датаклассы, загрузка файла настроек
@dependencies: dataclasses, typing, services.generator, services.quadrature, utils.settings_validator
@created: 2024-01-15
"""

from dataclasses import dataclass
from typing import Dict, List, Optional

from services.generator import GeneratorRegistry, generator_registry
from services.quadrature import QuadratureConfig, QuadratureMethod
from utils.constants import OutputFormats, SIGNIFICANT_DIGITS
from utils.settings_validator import settings_validator


@dataclass
class LoggingConfig:
    """Конфигурация логирования"""
    level: str = "INFO"
    file: Optional[str] = None


@dataclass
class QuadratureDefaults:
    """Параметры квадратуры по умолчанию"""
    method: QuadratureMethod = QuadratureMethod.ADAPTIVE_SIMPSON
    tolerance: float = 1e-10
    max_subdivisions: int = 1 << 20
    oracle_panels: int = 10 ** 6

    def to_config(self, tolerance: Optional[float] = None) -> QuadratureConfig:
        """Собрать QuadratureConfig (tolerance из флага имеет приоритет)"""
        return QuadratureConfig(
            method=self.method,
            tolerance=self.tolerance if tolerance is None else tolerance,
            max_subdivisions=self.max_subdivisions,
            oracle_panels=self.oracle_panels,
        )


@dataclass
class MonteCarloDefaults:
    """Параметры Монте-Карло по умолчанию"""
    samples: int = 10 ** 6
    seed: int = 42
    partitions: int = 4
    workers: int = 1


@dataclass
class OutputConfig:
    """Формат вывода таблиц"""
    format: str = OutputFormats.CSV
    significant_digits: int = SIGNIFICANT_DIGITS


class Config:
    """Основная конфигурация движка с валидацией файла настроек"""

    def __init__(self, settings_path: Optional[str] = None):
        self.load(settings_path)

    def load(self, settings_path: Optional[str] = None) -> None:
        """
        (Пере)загрузить настройки

        Args:
            settings_path: Путь к файлу ключ=значение; None - nonnewton.env, если есть
        """
        is_valid, result = settings_validator.validate_all(settings_path)
        self.is_valid = is_valid
        self.errors: List[str] = result["errors"]
        self.warnings: List[str] = result["warnings"]
        self.validation_result = result

        self.logging = LoggingConfig(level=result["log_level"], file=result["log_file"])
        self.quadrature = QuadratureDefaults(tolerance=result["tolerance"])
        self.monte_carlo = MonteCarloDefaults(samples=result["mc_samples"], seed=result["mc_seed"])
        self.output = OutputConfig()
        self.default_generator: str = result["default_generator"]
        self.generator_aliases: Dict[str, str] = result["aliases"]

    def apply_aliases(self, registry: GeneratorRegistry = generator_registry) -> None:
        """Зарегистрировать псевдонимы генераторов из файла настроек"""
        registry.clear_aliases()
        for alias, target in self.generator_aliases.items():
            registry.register_alias(alias, target)

    def report(self) -> None:
        settings_validator.log_validation_report(self.validation_result)


# Глобальный экземпляр конфигурации
config = Config()
