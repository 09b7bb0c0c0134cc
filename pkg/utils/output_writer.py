"""
@file: utils/output_writer.py
@description: Запись таблиц результатов в CSV/JSON с манифестом запуска, атомарно
@dependencies: csv, io, json, os, tempfile, datetime, pydantic, services.quadrature, utils.constants
@created: 2024-01-15
"""

import csv
import io
import json
import logging
import math
import os
import sys
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

from pydantic import BaseModel, Field

from services.quadrature import QuadratureConfig
from utils.constants import OutputFormats, SIGNIFICANT_DIGITS, TOOL_VERSION

Row = Dict[str, Any]


class RunManifest(BaseModel):
    """
    Манифест запуска: все, от чего зависят числа в таблице

    Повторный запуск с теми же полями (кроме timestamp) дает те же байты
    числовых колонок.
    """

    command: str
    generator_name: str
    quadrature: Optional[QuadratureConfig] = None
    seed: Optional[int] = None
    tool_version: str = TOOL_VERSION
    timestamp: str = Field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )
    rng_algorithm: Optional[str] = None
    parameters: Dict[str, Any] = Field(default_factory=dict)


def format_number(value: Any, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Число с фиксированным числом значащих цифр, без локали"""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, f".{digits}g")
    return str(value)


def _json_value(value: Any, digits: int) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(format(value, f".{digits}g"))
    return str(value)


class OutputWriter:
    """Сериализация таблиц результатов"""

    def __init__(self, digits: int = SIGNIFICANT_DIGITS):
        self.digits = digits
        self.logger = logging.getLogger(__name__)

    def render_csv(self, columns: Sequence[str], rows: List[Row]) -> str:
        """CSV: строка заголовка, разделитель '.', окончания строк LF"""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_number(row.get(column), self.digits) for column in columns])
        return buffer.getvalue()

    def render_json(self, columns: Sequence[str], rows: List[Row], manifest: RunManifest) -> str:
        """JSON: {"manifest": {...}, "rows": [{колонка: значение}, ...]}"""
        document = {
            "manifest": manifest.model_dump(mode="json"),
            "rows": [
                {column: _json_value(row.get(column), self.digits) for column in columns}
                for row in rows
            ],
        }
        return json.dumps(document, indent=2, ensure_ascii=False) + "\n"

    def write_atomic(self, path: str, content: str) -> None:
        """Запись через временный файл в том же каталоге и os.replace"""
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=str(target.parent))
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
                handle.write(content)
            os.replace(tmp_name, target)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise

    def emit(self, columns: Sequence[str], rows: List[Row], manifest: RunManifest,
             fmt: str = OutputFormats.CSV, out: Optional[str] = None,
             stream: Optional[TextIO] = None) -> None:
        """
        Вывести таблицу в stdout или в файл

        CSV в файл сопровождается файлом <out>.manifest.json; JSON содержит
        манифест внутри.
        """
        if fmt == OutputFormats.JSON:
            content = self.render_json(columns, rows, manifest)
        else:
            content = self.render_csv(columns, rows)

        if out is None:
            (stream or sys.stdout).write(content)
            self.logger.debug("Манифест: %s", manifest.model_dump_json())
            return

        self.write_atomic(out, content)
        if fmt == OutputFormats.CSV:
            self.write_atomic(f"{out}.manifest.json", manifest.model_dump_json(indent=2) + "\n")
        self.logger.info(f"Результат сохранен в {out}")


# Глобальный экземпляр
output_writer = OutputWriter()
