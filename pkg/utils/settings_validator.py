"""
@file: utils/settings_validator.py
@description: Валидатор файла настроек (ключ=значение) и переменных NN_*
@dependencies: math, pathlib, typing, dotenv, utils.constants
@created: 2024-01-15
"""

import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

from dotenv import dotenv_values

from utils.constants import GeneratorNames

logger = logging.getLogger(__name__)

# Файл настроек по умолчанию в рабочем каталоге
DEFAULT_SETTINGS_FILE = "nonnewton.env"

ALIAS_PREFIX = "GENERATOR_"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

DEFAULTS: Dict[str, Any] = {
    "log_level": "INFO",
    "log_file": None,
    "tolerance": 1e-10,
    "default_generator": GeneratorNames.PAPER_SIN2,
    "mc_samples": 10 ** 6,
    "mc_seed": 42,
}


class SettingsValidator:
    """
    Валидатор настроек

    Некорректные значения заменяются значениями по умолчанию с
    предупреждением. Ошибкой считается только псевдоним, указывающий
    на неизвестный генератор, и нечитаемый явно заданный файл.
    """

    def __init__(self):
        self.errors: List[str] = []
        self.warnings: List[str] = []

    def load(self, path: Optional[str] = None) -> Dict[str, Optional[str]]:
        """
        Прочитать файл настроек через python-dotenv

        Args:
            path: Явный путь (--config); без него читается nonnewton.env, если он есть
        """
        if path is None:
            default = Path(DEFAULT_SETTINGS_FILE)
            return dict(dotenv_values(default)) if default.is_file() else {}
        settings_path = Path(path)
        if not settings_path.is_file():
            self.errors.append(f"Файл настроек {path} не найден")
            return {}
        return dict(dotenv_values(settings_path))

    def validate_log_level(self, value: Optional[str]) -> str:
        if value is None:
            return DEFAULTS["log_level"]
        level = value.strip().upper()
        if level not in LOG_LEVELS:
            self.warnings.append(f"NN_LOG_LEVEL={value} не распознан, используется INFO")
            return DEFAULTS["log_level"]
        return level

    def validate_tolerance(self, value: Optional[str]) -> float:
        if value is None:
            return DEFAULTS["tolerance"]
        try:
            tolerance = float(value)
        except ValueError:
            self.warnings.append(f"NN_TOLERANCE={value} не является числом")
            return DEFAULTS["tolerance"]
        if not (math.isfinite(tolerance) and tolerance > 0.0):
            self.warnings.append(f"NN_TOLERANCE={value} должен быть положительным")
            return DEFAULTS["tolerance"]
        return tolerance

    def validate_positive_int(self, key: str, value: Optional[str], default: int,
                              allow_zero: bool = False) -> int:
        if value is None:
            return default
        try:
            number = int(value)
        except ValueError:
            self.warnings.append(f"{key}={value} не является целым числом")
            return default
        if number < 0 or (number == 0 and not allow_zero):
            self.warnings.append(f"{key}={value} вне допустимого диапазона")
            return default
        return number

    def validate_aliases(self, raw: Mapping[str, Optional[str]]) -> Dict[str, str]:
        """Псевдонимы GENERATOR_<ИМЯ>=<встроенный генератор>"""
        aliases: Dict[str, str] = {}
        for key, target in raw.items():
            if not key.upper().startswith(ALIAS_PREFIX):
                continue
            alias = key[len(ALIAS_PREFIX):].strip().lower().replace("_", "-")
            if not alias:
                self.warnings.append(f"Пустое имя псевдонима в ключе {key}")
                continue
            target_name = (target or "").strip().lower()
            if target_name not in GeneratorNames.BUILTINS:
                self.errors.append(
                    f"{key}={target} ссылается не на встроенный генератор "
                    f"({', '.join(GeneratorNames.BUILTINS)})"
                )
                continue
            aliases[alias] = target_name
        return aliases

    def validate_all(self, path: Optional[str] = None) -> Tuple[bool, Dict[str, Any]]:
        """Валидация всех настроек"""
        self.errors.clear()
        self.warnings.clear()

        raw = self.load(path)
        aliases = self.validate_aliases(raw)

        default_generator = (raw.get("NN_DEFAULT_GENERATOR") or DEFAULTS["default_generator"]).strip().lower()
        if default_generator not in GeneratorNames.BUILTINS and default_generator not in aliases:
            self.warnings.append(
                f"NN_DEFAULT_GENERATOR={default_generator} не найден, используется {GeneratorNames.PAPER_SIN2}"
            )
            default_generator = DEFAULTS["default_generator"]

        result = {
            "log_level": self.validate_log_level(raw.get("NN_LOG_LEVEL")),
            "log_file": (raw.get("NN_LOG_FILE") or "").strip() or None,
            "tolerance": self.validate_tolerance(raw.get("NN_TOLERANCE")),
            "default_generator": default_generator,
            "mc_samples": self.validate_positive_int("NN_MC_SAMPLES", raw.get("NN_MC_SAMPLES"),
                                                     DEFAULTS["mc_samples"]),
            "mc_seed": self.validate_positive_int("NN_MC_SEED", raw.get("NN_MC_SEED"),
                                                  DEFAULTS["mc_seed"], allow_zero=True),
            "aliases": aliases,
        }
        is_valid = not self.errors
        result["is_valid"] = is_valid
        result["errors"] = self.errors.copy()
        result["warnings"] = self.warnings.copy()
        return is_valid, result

    def log_validation_report(self, result: Dict[str, Any]) -> None:
        """Отчет о валидации в журнал (stdout не используется)"""
        for error in result["errors"]:
            logger.error("Настройки: %s", error)
        for warning in result["warnings"]:
            logger.warning("Настройки: %s", warning)
        logger.debug(
            "Настройки: генератор=%s, tolerance=%r, mc_samples=%d, mc_seed=%d, псевдонимы=%s",
            result["default_generator"], result["tolerance"], result["mc_samples"],
            result["mc_seed"], result["aliases"] or "-",
        )


# Глобальный экземпляр валидатора
settings_validator = SettingsValidator()
