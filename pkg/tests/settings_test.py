"""
@file: tests/settings_test.py
@description: Тесты файла настроек, валидаторов аргументов и форматирования вывода
@dependencies: pytest, argparse, json, utils
@created: 2025-02-14
"""

import argparse
import json
import math

import pytest

from config import Config
from services.generator import GeneratorRegistry
from services.quadrature import QuadratureConfig
from utils.output_writer import OutputWriter, RunManifest, format_number
from utils.settings_validator import DEFAULTS, SettingsValidator
from utils.validators import CliValidators, angle_argument, angle_list_argument


@pytest.fixture
def settings_file(tmp_path):
    """Фабрика файла настроек с заданным содержимым"""

    def make(text: str) -> str:
        path = tmp_path / "nonnewton.env"
        path.write_text(text, encoding="utf-8")
        return str(path)

    return make


class TestSettingsValidator:
    """Проверка ключей NN_* и псевдонимов GENERATOR_*"""

    def test_defaults_without_file(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        is_valid, result = SettingsValidator().validate_all()
        assert is_valid
        for key in ("log_level", "tolerance", "default_generator", "mc_samples", "mc_seed"):
            assert result[key] == DEFAULTS[key], f"{key} должен иметь значение по умолчанию"
        assert result["aliases"] == {}

    def test_values_from_file(self, settings_file):
        path = settings_file(
            "NN_LOG_LEVEL=debug\nNN_TOLERANCE=1e-8\nNN_MC_SAMPLES=5000\nNN_MC_SEED=0\n"
            "GENERATOR_FLAT=identity\nNN_DEFAULT_GENERATOR=flat\n"
        )
        is_valid, result = SettingsValidator().validate_all(path)
        assert is_valid, result["errors"]
        assert result["log_level"] == "DEBUG"
        assert result["tolerance"] == 1e-8
        assert result["mc_samples"] == 5000
        assert result["mc_seed"] == 0, "Нулевое зерно допустимо"
        assert result["aliases"] == {"flat": "identity"}
        assert result["default_generator"] == "flat"

    def test_bad_values_fall_back_with_warnings(self, settings_file):
        path = settings_file(
            "NN_LOG_LEVEL=loud\nNN_TOLERANCE=-1\nNN_MC_SAMPLES=many\nNN_DEFAULT_GENERATOR=gaussian\n"
        )
        is_valid, result = SettingsValidator().validate_all(path)
        assert is_valid, "Плохие значения - предупреждения, а не ошибки"
        assert result["log_level"] == "INFO"
        assert result["tolerance"] == DEFAULTS["tolerance"]
        assert result["mc_samples"] == DEFAULTS["mc_samples"]
        assert result["default_generator"] == "paper-sin2"
        assert len(result["warnings"]) == 4

    def test_alias_to_unknown_generator_is_error(self, settings_file):
        path = settings_file("GENERATOR_BELL=gaussian\n")
        is_valid, result = SettingsValidator().validate_all(path)
        assert not is_valid
        assert "GENERATOR_BELL" in result["errors"][0]

    def test_alias_name_normalized(self, settings_file):
        path = settings_file("GENERATOR_MY_SINE=paper-sin2\n")
        _, result = SettingsValidator().validate_all(path)
        assert result["aliases"] == {"my-sine": "paper-sin2"}

    def test_missing_explicit_file(self, tmp_path):
        is_valid, result = SettingsValidator().validate_all(str(tmp_path / "absent.env"))
        assert not is_valid
        assert "не найден" in result["errors"][0]


class TestConfig:
    """Секции конфигурации и регистрация псевдонимов"""

    def test_sections(self, settings_file):
        cfg = Config(settings_file("NN_TOLERANCE=1e-7\nNN_MC_SEED=9\n"))
        assert cfg.quadrature.to_config() == QuadratureConfig(tolerance=1e-7)
        assert cfg.quadrature.to_config(1e-12).tolerance == 1e-12, "Флаг имеет приоритет над файлом"
        assert cfg.monte_carlo.seed == 9
        assert cfg.logging.level == "INFO" and cfg.logging.file is None

    def test_apply_aliases_replaces_previous(self, settings_file):
        registry = GeneratorRegistry()
        Config(settings_file("GENERATOR_OLD=identity\n")).apply_aliases(registry)
        assert registry.get("old").name == "identity"
        Config(settings_file("GENERATOR_NEW=paper-sin2\n")).apply_aliases(registry)
        assert registry.get("new").name == "paper-sin2"
        assert "old" not in registry.names(), "Старые псевдонимы должны сбрасываться"


class TestCliValidators:
    """Разбор углов и числовых аргументов"""

    @pytest.mark.parametrize("text, expected", [
        ("0", 0.0),
        ("0.785", 0.785),
        ("pi", math.pi),
        ("-pi/2", -math.pi / 2),
        ("3pi/4", 3 * math.pi / 4),
        ("3*pi/4", 3 * math.pi / 4),
        ("π/3", math.pi / 3),
        ("−π", -math.pi),
        (" 2 PI / 3 ", 2 * math.pi / 3),
    ])
    def test_angle(self, text, expected):
        result = CliValidators.validate_angle(text)
        assert result.is_valid, result.error_message
        assert result.cleaned_value == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("text", ["", "quarter", "pi/0", "inf", "nan", "pi pi"])
    def test_angle_rejected(self, text):
        assert not CliValidators.validate_angle(text).is_valid

    def test_angle_list(self):
        result = CliValidators.validate_angle_list("0,pi/4, pi")
        assert result.is_valid
        assert result.cleaned_value == pytest.approx([0.0, math.pi / 4, math.pi])
        assert not CliValidators.validate_angle_list("0,,pi").is_valid

    def test_argparse_types(self):
        assert angle_argument("pi/2") == pytest.approx(math.pi / 2)
        assert angle_list_argument("0,pi") == pytest.approx([0.0, math.pi])
        with pytest.raises(argparse.ArgumentTypeError):
            angle_argument("north")

    def test_numeric_validators(self):
        assert CliValidators.validate_min_int(2, 2, "--grid-points").is_valid
        assert not CliValidators.validate_min_int(1, 2, "--grid-points").is_valid
        assert CliValidators.validate_seed(0).is_valid
        assert not CliValidators.validate_seed(-1).is_valid
        assert not CliValidators.validate_seed(1 << 64).is_valid
        assert CliValidators.validate_interval(0.0, 1.0).cleaned_value == (0.0, 1.0)
        assert not CliValidators.validate_interval(1.0, 1.0).is_valid
        assert not CliValidators.validate_tolerance(0.0).is_valid
        assert not CliValidators.validate_tolerance(math.inf).is_valid

    @pytest.mark.parametrize("text, expected", [("csv", "csv"), (" JSON ", "json")])
    def test_format(self, text, expected):
        assert CliValidators.validate_format(text).cleaned_value == expected

    def test_format_rejected(self):
        assert not CliValidators.validate_format("xml").is_valid


class TestOutputWriter:
    """Сериализация таблиц"""

    def test_format_number(self):
        assert format_number(0.1 + 0.2) == "0.3", "12 значащих цифр"
        assert format_number(2.0 ** 0.5) == "1.41421356237"
        assert format_number(1e-20) == "1e-20"
        assert format_number(3) == "3"
        assert format_number(True) == "true"
        assert format_number(math.nan) == "nan"
        assert format_number("++") == "++"

    def test_render_csv(self):
        text = OutputWriter().render_csv(["a", "b"], [{"a": 0.25, "b": False}, {"a": 1.0, "b": True}])
        assert text == "a,b\n0.25,false\n1,true\n"

    def test_render_json(self):
        manifest = RunManifest(command="chsh", generator_name="paper-sin2", seed=None)
        document = json.loads(OutputWriter().render_json(["v"], [{"v": math.inf}, {"v": 0.5}], manifest))
        assert document["rows"] == [{"v": None}, {"v": 0.5}], "Неконечные значения - null"
        assert document["manifest"]["command"] == "chsh"
        assert document["manifest"]["timestamp"].endswith("+00:00"), "Время в UTC"

    def test_write_atomic_replaces_file(self, tmp_path):
        target = tmp_path / "nested" / "table.csv"
        writer = OutputWriter()
        writer.write_atomic(str(target), "old\n")
        writer.write_atomic(str(target), "new\n")
        assert target.read_text(encoding="utf-8") == "new\n"
        assert sorted(p.name for p in target.parent.iterdir()) == ["table.csv"], "Временные файлы не остаются"
