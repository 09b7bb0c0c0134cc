"""
@file: utils/logger.py
@description: Система логирования с ротацией: консоль в stderr, файл по желанию
@dependencies: logging, pathlib, sys
@created: 2024-01-15
"""

import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional


LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(
    log_file: Optional[str] = None,
    log_level: str = "INFO",
    max_bytes: int = 10 * 1024 * 1024,  # 10MB
    backup_count: int = 5
) -> None:
    """
    Настройка системы логирования

    Консольный обработчик пишет в stderr: stdout занят таблицами CSV/JSON.

    Args:
        log_file: Путь к файлу журнала с ротацией (None - без файла)
        log_level: Уровень логирования консоли
        max_bytes: Размер файла до ротации
        backup_count: Число архивных файлов
    """
    formatter = logging.Formatter(LOG_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')

    root_logger = logging.getLogger()
    level = getattr(logging, log_level.upper(), logging.INFO)
    root_logger.setLevel(logging.DEBUG if log_file else level)

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
        if isinstance(handler, logging.FileHandler):
            handler.close()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler.setLevel(level)
    root_logger.addHandler(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=max_bytes,
            backupCount=backup_count,
            encoding='utf-8'
        )
        file_handler.setFormatter(formatter)
        file_handler.setLevel(logging.DEBUG)
        root_logger.addHandler(file_handler)

    logging.getLogger(__name__).debug("Система логирования инициализирована (%s)", log_level)


def get_logger(name: str) -> logging.Logger:
    """Получить логгер с указанным именем"""
    return logging.getLogger(name)


class EngineLogger:
    """Логгер команд движка: запуск, результат, квадратуры, ошибки"""

    def __init__(self, name: str = "nonnewton"):
        self.logger = get_logger(name)

    def log_command(self, command: str, generator: str, details: str = "") -> None:
        """Логирование запуска команды"""
        self.logger.info(f"Команда {command} (генератор {generator}) {details}".strip())

    def log_result(self, command: str, passed: bool, details: str = "") -> None:
        """Логирование итога проверки"""
        status = "пройдена" if passed else "НЕ пройдена"
        message = f"Команда {command}: проверка {status} {details}".strip()
        if passed:
            self.logger.info(message)
        else:
            self.logger.warning(message)

    def log_quadrature(self, method: str, panels: int, error: float) -> None:
        """Логирование статистики квадратуры"""
        self.logger.debug(f"Квадратура {method}: {panels} панелей, оценка погрешности {error:.3e}")

    def log_warning(self, message: str) -> None:
        self.logger.warning(message)

    def log_error(self, error: Exception, context: str = "") -> None:
        """Логирование ошибок"""
        self.logger.error(f"Ошибка {context}: {error}".strip(), exc_info=self.logger.isEnabledFor(logging.DEBUG))


# Глобальный экземпляр логгера движка
engine_logger = EngineLogger()
